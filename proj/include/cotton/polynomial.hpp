#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cotton/errors.hpp"
#include "cotton/rational.hpp"

namespace cotton {

/// Exponent multi-index, one entry per variable.
using Exponent = std::vector<unsigned>;

/// Multivariate polynomial with exact rational coefficients over a fixed,
/// ordered list of named variables. Zero coefficients are never stored, so
/// equal polynomials have identical term maps.
class Polynomial {
 public:
  using TermMap = std::map<Exponent, Rational>;

  explicit Polynomial(std::vector<std::string> variables);

  static Polynomial constant(std::vector<std::string> variables, const Rational& value);
  static Polynomial variable(std::vector<std::string> variables, std::size_t index);

  const std::vector<std::string>& variables() const { return variables_; }
  std::size_t num_variables() const { return variables_.size(); }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  unsigned total_degree() const;
  /// Largest exponent of one variable across all terms.
  unsigned degree_in(std::size_t var) const;

  Rational coefficient(const Exponent& e) const;
  void add_term(const Exponent& e, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.variables_ == b.variables_ && a.terms_ == b.terms_;
  }

  Polynomial pow(unsigned exponent) const;
  Polynomial derivative(std::size_t var) const;

  /// Same polynomial expressed over a different variable list; every
  /// variable actually used must appear in `variables`.
  Polynomial rebased(const std::vector<std::string>& variables) const;

  template <class S>
  S evaluate(std::span<const S> point) const;

  /// Canonical, re-parseable text, e.g. "x^3 + t*x" or "-3/2*t^2 + 1".
  std::string to_string() const;

 private:
  void require_same_variables(const Polynomial& rhs) const;

  std::vector<std::string> variables_;
  TermMap terms_;
};

template <class S>
S Polynomial::evaluate(std::span<const S> point) const {
  if (point.size() != variables_.size()) {
    throw ArityMismatch("polynomial over " + std::to_string(variables_.size()) +
                        " variables evaluated at a point of arity " +
                        std::to_string(point.size()));
  }
  S total{0};
  for (const auto& [exponent, coefficient] : terms_) {
    S term = scalar_from<S>(coefficient);
    for (std::size_t i = 0; i < exponent.size(); ++i) {
      for (unsigned k = 0; k < exponent[i]; ++k) term = term * point[i];
    }
    total = total + term;
  }
  return total;
}

}  // namespace cotton
