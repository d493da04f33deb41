#include "cotton/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace cotton {

namespace {

void enumerate_degree(std::size_t nvars, unsigned degree, std::size_t var, Exponent& current,
                      std::vector<Exponent>& out) {
  if (var + 1 == nvars) {
    current[var] = degree;
    out.push_back(current);
    return;
  }
  // Descending in the earlier variables gives h0^d first within a degree.
  for (unsigned k = degree + 1; k-- > 0;) {
    current[var] = k;
    enumerate_degree(nvars, degree - k, var + 1, current, out);
  }
  current[var] = 0;
}

}  // namespace

MonomialLayout::MonomialLayout(std::size_t nvars, int order) : nvars_(nvars), order_(order) {
  if (nvars == 0) throw PreconditionError("jets need at least one variable");
  if (order < 0) throw InsufficientJetOrder("negative jet order");
  Exponent current(nvars, 0);
  for (unsigned d = 0; d <= static_cast<unsigned>(order); ++d) {
    enumerate_degree(nvars, d, 0, current, monomials_);
  }
  degrees_.reserve(monomials_.size());
  for (const auto& m : monomials_) {
    unsigned d = 0;
    for (unsigned k : m) d += k;
    degrees_.push_back(d);
  }

  factor_pairs_.resize(monomials_.size());
  Exponent sum(nvars);
  for (std::size_t a = 0; a < monomials_.size(); ++a) {
    for (std::size_t b = 0; b < monomials_.size(); ++b) {
      if (degrees_[a] + degrees_[b] > static_cast<unsigned>(order)) continue;
      for (std::size_t i = 0; i < nvars; ++i) sum[i] = monomials_[a][i] + monomials_[b][i];
      factor_pairs_[index_of(sum)].emplace_back(a, b);
    }
  }

  shift_.resize(monomials_.size() * nvars);
  for (std::size_t a = 0; a < monomials_.size(); ++a) {
    for (std::size_t v = 0; v < nvars; ++v) {
      Exponent e = monomials_[a];
      e[v] += 1;
      shift_[a * nvars + v] = index_of(e);
    }
  }
}

std::size_t MonomialLayout::index_of(const Exponent& e) const {
  if (e.size() != nvars_) throw ArityMismatch("exponent arity mismatch");
  unsigned d = 0;
  for (unsigned k : e) d += k;
  if (d > static_cast<unsigned>(order_)) return monomials_.size();
  // Monomials of one degree are contiguous and sorted descending.
  const auto first = std::find_if(degrees_.begin(), degrees_.end(), [d](unsigned x) { return x == d; });
  const auto begin = monomials_.begin() + (first - degrees_.begin());
  const auto end = std::find_if(first, degrees_.end(), [d](unsigned x) { return x != d; });
  const auto stop = monomials_.begin() + (end - degrees_.begin());
  const auto it = std::lower_bound(begin, stop, e, [](const Exponent& a, const Exponent& b) { return a > b; });
  return static_cast<std::size_t>(it - monomials_.begin());
}

std::shared_ptr<const MonomialLayout> MonomialLayout::get(std::size_t nvars, int order) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, int>, std::shared_ptr<const MonomialLayout>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{nvars, order}];
  if (!slot) slot = std::make_shared<const MonomialLayout>(nvars, order);
  return slot;
}

template <class S>
Jet<S>::Jet(std::size_t nvars, int order, S constant_term)
    : layout_(MonomialLayout::get(nvars, order)), coeffs_(layout_->size(), S{0}) {
  coeffs_[0] = std::move(constant_term);
}

template <class S>
Jet<S> Jet<S>::coordinate(std::size_t nvars, int order, std::size_t var, S value) {
  if (var >= nvars) throw ArityMismatch("coordinate index out of range");
  Jet jet(nvars, order, std::move(value));
  if (order >= 1) {
    Exponent e(nvars, 0);
    e[var] = 1;
    jet.coeffs_[jet.layout_->index_of(e)] = S{1};
  }
  return jet;
}

template <class S>
S Jet<S>::coefficient(const Exponent& e) const {
  const std::size_t i = layout_->index_of(e);
  if (i == layout_->size()) throw InsufficientJetOrder("coefficient beyond jet order requested");
  return coeffs_[i];
}

template <class S>
void Jet<S>::set_coefficient(const Exponent& e, S value) {
  const std::size_t i = layout_->index_of(e);
  if (i == layout_->size()) throw InsufficientJetOrder("coefficient beyond jet order requested");
  coeffs_[i] = std::move(value);
}

template <class S>
S Jet<S>::partial(const Exponent& e) const {
  S result = coefficient(e);
  for (unsigned k : e) {
    for (unsigned f = 2; f <= k; ++f) result = result * S(static_cast<long>(f));
  }
  return result;
}

template <class S>
bool Jet<S>::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const S& c) { return cotton::is_zero(c); });
}

template <class S>
double Jet<S>::max_abs() const {
  double best = 0;
  for (const auto& c : coeffs_) best = std::max(best, std::abs(to_double(c)));
  return best;
}

template <class S>
Jet<S> Jet<S>::truncated(int order) const {
  if (order > this->order()) {
    throw InsufficientJetOrder("cannot raise jet order from " + std::to_string(this->order()) +
                               " to " + std::to_string(order));
  }
  if (order == this->order()) return *this;
  auto layout = MonomialLayout::get(num_variables(), order);
  // Lower-order layouts are prefixes of higher-order ones.
  std::vector<S> coeffs(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(layout->size()));
  return Jet(std::move(layout), std::move(coeffs));
}

template <class S>
Jet<S> Jet<S>::derivative(std::size_t var) const {
  if (var >= num_variables()) throw ArityMismatch("derivative variable out of range");
  if (order() == 0) throw InsufficientJetOrder("cannot differentiate an order-0 jet");
  auto layout = MonomialLayout::get(num_variables(), order() - 1);
  std::vector<S> coeffs(layout->size(), S{0});
  for (std::size_t a = 0; a < layout->size(); ++a) {
    const std::size_t up = layout_->shifted(a, var);
    const long factor = static_cast<long>(layout_->monomial(up)[var]);
    coeffs[a] = coeffs_[up] * S(factor);
  }
  return Jet(std::move(layout), std::move(coeffs));
}

template <class S>
Jet<S> Jet<S>::reciprocal() const {
  if (cotton::is_zero(coeffs_[0])) {
    throw JetDivisionByZero("division by a jet with vanishing constant term");
  }
  const S inv0 = S{1} / coeffs_[0];
  std::vector<S> r(coeffs_.size(), S{0});
  r[0] = inv0;
  // r_c = -inv0 * sum_{a != 0} c_a r_b over c = a + b, in graded order.
  for (std::size_t c = 1; c < r.size(); ++c) {
    S acc{0};
    for (const auto& [a, b] : layout_->factor_pairs(c)) {
      if (a == 0) continue;
      if (cotton::is_zero(coeffs_[a]) || cotton::is_zero(r[b])) continue;
      acc = acc + coeffs_[a] * r[b];
    }
    r[c] = -(acc * inv0);
  }
  return Jet(layout_, std::move(r));
}

template <class S>
void Jet<S>::require_compatible(const Jet& a, const Jet& b) {
  if (a.num_variables() != b.num_variables()) {
    throw ArityMismatch("jets over different numbers of variables");
  }
}

template <class S>
Jet<S> Jet<S>::combine(const Jet& a, const Jet& b, int sign) {
  require_compatible(a, b);
  if (a.order() != b.order()) {
    const int order = std::min(a.order(), b.order());
    return combine(a.truncated(order), b.truncated(order), sign);
  }
  std::vector<S> coeffs = a.coeffs_;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (sign > 0) {
      coeffs[i] = coeffs[i] + b.coeffs_[i];
    } else {
      coeffs[i] = coeffs[i] - b.coeffs_[i];
    }
  }
  return Jet(a.layout_, std::move(coeffs));
}

template <class S>
Jet<S> Jet<S>::multiply(const Jet& a, const Jet& b) {
  require_compatible(a, b);
  if (a.order() != b.order()) {
    const int order = std::min(a.order(), b.order());
    return multiply(a.truncated(order), b.truncated(order));
  }
  const auto& layout = *a.layout_;
  std::vector<S> coeffs(layout.size(), S{0});
  for (std::size_t c = 0; c < coeffs.size(); ++c) {
    S acc{0};
    for (const auto& [i, j] : layout.factor_pairs(c)) {
      if (cotton::is_zero(a.coeffs_[i]) || cotton::is_zero(b.coeffs_[j])) continue;
      acc = acc + a.coeffs_[i] * b.coeffs_[j];
    }
    coeffs[c] = std::move(acc);
  }
  return Jet(a.layout_, std::move(coeffs));
}

template <class S>
Jet<S> Jet<S>::operator-() const {
  std::vector<S> coeffs = coeffs_;
  for (auto& c : coeffs) c = -c;
  return Jet(layout_, std::move(coeffs));
}

template <class S>
Jet<S>& Jet<S>::operator+=(const Jet& rhs) {
  *this = combine(*this, rhs, +1);
  return *this;
}

template <class S>
Jet<S>& Jet<S>::operator-=(const Jet& rhs) {
  *this = combine(*this, rhs, -1);
  return *this;
}

template <class S>
Jet<S>& Jet<S>::operator*=(const S& c) {
  for (auto& x : coeffs_) x = x * c;
  return *this;
}

template <class S>
Jet<S> jet_eval(const Polynomial& p, std::span<const S> point, int order) {
  const std::size_t n = p.num_variables();
  if (point.size() != n) {
    throw ArityMismatch("point arity " + std::to_string(point.size()) + " does not match " +
                        std::to_string(n) + " polynomial variables");
  }
  if (order < 0) throw InsufficientJetOrder("negative jet order");

  // Powers of each coordinate jet, computed once.
  std::vector<std::vector<Jet<S>>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    powers[i].push_back(Jet<S>::constant(n, order, S{1}));
    const unsigned top = p.degree_in(i);
    if (top == 0) continue;
    const Jet<S> x = Jet<S>::coordinate(n, order, i, point[i]);
    for (unsigned k = 1; k <= top; ++k) powers[i].push_back(powers[i].back() * x);
  }

  Jet<S> result(n, order);
  for (const auto& [exponent, coefficient] : p.terms()) {
    Jet<S> term = Jet<S>::constant(n, order, scalar_from<S>(coefficient));
    for (std::size_t i = 0; i < n; ++i) {
      if (exponent[i] > 0) term = term * powers[i][exponent[i]];
    }
    result += term;
  }
  return result;
}

template class Jet<Rational>;
template class Jet<double>;
template Jet<Rational> jet_eval<Rational>(const Polynomial&, std::span<const Rational>, int);
template Jet<double> jet_eval<double>(const Polynomial&, std::span<const double>, int);

}  // namespace cotton
