#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "cotton/errors.hpp"
#include "cotton/polynomial.hpp"
#include "cotton/rational.hpp"

namespace cotton {

inline constexpr int kDefaultJetOrder = 4;

/// Graded enumeration of the monomials h^a with |a| <= order in `nvars`
/// variables, plus the product and shift tables jets need. Layouts are
/// immutable and shared between jets of the same shape.
class MonomialLayout {
 public:
  static std::shared_ptr<const MonomialLayout> get(std::size_t nvars, int order);

  std::size_t num_variables() const { return nvars_; }
  int order() const { return order_; }
  std::size_t size() const { return monomials_.size(); }

  const Exponent& monomial(std::size_t index) const { return monomials_[index]; }
  unsigned degree(std::size_t index) const { return degrees_[index]; }
  /// Index of an exponent, or size() if its degree exceeds the order.
  std::size_t index_of(const Exponent& e) const;

  /// All (a, b) with monomial(a) * monomial(b) == monomial(c).
  const std::vector<std::pair<std::size_t, std::size_t>>& factor_pairs(std::size_t c) const {
    return factor_pairs_[c];
  }
  /// Index of monomial(a) * h_var, or size() when that exceeds the order.
  std::size_t shifted(std::size_t a, std::size_t var) const { return shift_[a * nvars_ + var]; }

  MonomialLayout(std::size_t nvars, int order);

 private:
  std::size_t nvars_;
  int order_;
  std::vector<Exponent> monomials_;
  std::vector<unsigned> degrees_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> factor_pairs_;
  std::vector<std::size_t> shift_;
};

/// Truncated Taylor expansion f(p + h) = sum_a c_a h^a, |a| <= order, of a
/// scalar function at a point. S is Rational (exact) or double (float).
///
/// Binary operations on jets of different order truncate to the smaller
/// order: a jet of order k carries no information beyond order k.
template <class S>
class Jet {
 public:
  Jet(std::size_t nvars, int order, S constant_term = S{0});

  static Jet constant(std::size_t nvars, int order, S value) { return Jet(nvars, order, std::move(value)); }
  /// The jet of the coordinate function x_var at a point where x_var = value.
  static Jet coordinate(std::size_t nvars, int order, std::size_t var, S value);

  std::size_t num_variables() const { return layout_->num_variables(); }
  int order() const { return layout_->order(); }
  const MonomialLayout& layout() const { return *layout_; }

  const std::vector<S>& coefficients() const { return coeffs_; }
  const S& value() const { return coeffs_[0]; }
  S coefficient(const Exponent& e) const;
  void set_coefficient(const Exponent& e, S value);
  /// d^a f (p) = a! c_a.
  S partial(const Exponent& e) const;

  bool is_zero() const;
  double max_abs() const;

  Jet truncated(int order) const;
  /// Partial derivative along one variable; the result has one order less.
  Jet derivative(std::size_t var) const;
  Jet reciprocal() const;

  Jet operator-() const;
  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const S& c);

  friend Jet operator+(const Jet& a, const Jet& b) { return combine(a, b, +1); }
  friend Jet operator-(const Jet& a, const Jet& b) { return combine(a, b, -1); }
  friend Jet operator*(const Jet& a, const Jet& b) { return multiply(a, b); }
  friend Jet operator/(const Jet& a, const Jet& b) { return multiply(a, b.reciprocal()); }
  friend Jet operator*(Jet a, const S& c) { return a *= c; }
  friend Jet operator*(const S& c, Jet a) { return a *= c; }
  friend bool operator==(const Jet& a, const Jet& b) {
    return a.order() == b.order() && a.num_variables() == b.num_variables() && a.coeffs_ == b.coeffs_;
  }

  template <class T>
  Jet<T> convert() const;

 private:
  Jet(std::shared_ptr<const MonomialLayout> layout, std::vector<S> coeffs)
      : layout_(std::move(layout)), coeffs_(std::move(coeffs)) {}

  static Jet combine(const Jet& a, const Jet& b, int sign);
  static Jet multiply(const Jet& a, const Jet& b);
  static void require_compatible(const Jet& a, const Jet& b);

  template <class>
  friend class Jet;

  std::shared_ptr<const MonomialLayout> layout_;
  std::vector<S> coeffs_;
};

/// Jet of a polynomial at a point: coefficient of h^a is d^a p (point) / a!.
template <class S>
Jet<S> jet_eval(const Polynomial& p, std::span<const S> point, int order);

template <class S>
template <class T>
Jet<T> Jet<S>::convert() const {
  std::vector<T> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) {
    if constexpr (std::is_same_v<T, S>) {
      out.push_back(c);
    } else if constexpr (std::is_same_v<T, double>) {
      out.push_back(to_double(c));
    } else {
      static_assert(std::is_same_v<T, double>, "only conversion to double is supported");
    }
  }
  return Jet<T>(layout_, std::move(out));
}

extern template class Jet<Rational>;
extern template class Jet<double>;

}  // namespace cotton
