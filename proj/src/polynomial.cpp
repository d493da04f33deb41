#include "cotton/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cotton {

Polynomial::Polynomial(std::vector<std::string> variables) : variables_(std::move(variables)) {}

Polynomial Polynomial::constant(std::vector<std::string> variables, const Rational& value) {
  Polynomial p(std::move(variables));
  p.add_term(Exponent(p.num_variables(), 0), value);
  return p;
}

Polynomial Polynomial::variable(std::vector<std::string> variables, std::size_t index) {
  Polynomial p(std::move(variables));
  if (index >= p.num_variables()) throw ArityMismatch("variable index out of range");
  Exponent e(p.num_variables(), 0);
  e[index] = 1;
  p.add_term(e, Rational(1));
  return p;
}

unsigned Polynomial::total_degree() const {
  unsigned best = 0;
  for (const auto& [e, c] : terms_) best = std::max(best, std::accumulate(e.begin(), e.end(), 0u));
  return best;
}

unsigned Polynomial::degree_in(std::size_t var) const {
  unsigned best = 0;
  for (const auto& [e, c] : terms_) best = std::max(best, e.at(var));
  return best;
}

Rational Polynomial::coefficient(const Exponent& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != variables_.size()) throw ArityMismatch("exponent arity mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Polynomial::require_same_variables(const Polynomial& rhs) const {
  if (variables_ != rhs.variables_) {
    throw ArityMismatch("polynomials over different variable lists");
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial out(variables_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  require_same_variables(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  require_same_variables(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  require_same_variables(rhs);
  Polynomial out(variables_);
  Exponent e(variables_.size());
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  terms_ = std::move(out.terms_);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coefficient] : terms_) coefficient *= c;
  return *this;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(variables_, Rational(1));
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1u;
    if (exponent > 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= variables_.size()) throw ArityMismatch("derivative variable out of range");
  Polynomial out(variables_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    out.add_term(d, c * Rational(static_cast<long>(e[var])));
  }
  return out;
}

Polynomial Polynomial::rebased(const std::vector<std::string>& variables) const {
  std::vector<std::size_t> target(variables_.size());
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    const auto it = std::find(variables.begin(), variables.end(), variables_[i]);
    target[i] = it == variables.end() ? variables.size() : static_cast<std::size_t>(it - variables.begin());
  }
  Polynomial out(variables);
  for (const auto& [e, c] : terms_) {
    Exponent mapped(variables.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (target[i] == variables.size()) {
        throw ArityMismatch("variable '" + variables_[i] + "' missing from target variable list");
      }
      mapped[target[i]] += e[i];
    }
    out.add_term(mapped, c);
  }
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  // Descending total degree, then descending exponent lexicographically.
  std::vector<const TermMap::value_type*> order;
  order.reserve(terms_.size());
  for (const auto& term : terms_) order.push_back(&term);
  std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    const unsigned da = std::accumulate(a->first.begin(), a->first.end(), 0u);
    const unsigned db = std::accumulate(b->first.begin(), b->first.end(), 0u);
    if (da != db) return da > db;
    return a->first > b->first;
  });

  std::ostringstream os;
  bool first = true;
  for (const auto* term : order) {
    const auto& [e, c] = *term;
    const bool negative = c.sign() < 0;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;

    const Rational magnitude = c.abs();
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      factors.push_back(e[i] == 1 ? variables_[i] : variables_[i] + "^" + std::to_string(e[i]));
    }
    const bool unit = magnitude == Rational(1);
    if (!unit || factors.empty()) factors.insert(factors.begin(), magnitude.to_string());
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (k) os << "*";
      os << factors[k];
    }
  }
  return os.str();
}

}  // namespace cotton
