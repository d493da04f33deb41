#include "cotton/chart.hpp"

#include <cmath>
#include <sstream>

namespace cotton {

std::size_t upper_index(std::size_t dim, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  if (j >= dim) throw ArityMismatch("metric index out of range");
  return i * dim - i * (i - 1) / 2 + (j - i);
}

PolynomialMetric::PolynomialMetric(
    std::vector<std::string> coords,
    const std::map<std::pair<std::size_t, std::size_t>, Polynomial>& components)
    : coords_(std::move(coords)) {
  const std::size_t n = coords_.size();
  if (n < 2) throw PreconditionError("metric dimension must be at least 2");
  upper_.assign(n * (n + 1) / 2, Polynomial(coords_));
  std::vector<bool> seen(upper_.size(), false);
  for (const auto& [ij, p] : components) {
    const std::size_t k = upper_index(n, ij.first, ij.second);
    if (seen[k]) {
      throw InputError("metric component (" + coords_[ij.first] + "," + coords_[ij.second] +
                       ") given twice");
    }
    seen[k] = true;
    upper_[k] = p.rebased(coords_);
  }
}

const Polynomial& PolynomialMetric::component(std::size_t i, std::size_t j) const {
  return upper_[upper_index(dim(), i, j)];
}

template <class S>
MetricChart<S>::MetricChart(std::vector<std::string> coords, std::vector<ComponentJetFn<S>> upper)
    : coords_(std::move(coords)), upper_(std::move(upper)) {
  const std::size_t n = coords_.size();
  if (n < 2) throw PreconditionError("metric dimension must be at least 2");
  if (upper_.size() != n * (n + 1) / 2) throw ArityMismatch("wrong number of metric components");
}

template <class S>
MetricChart<S> MetricChart<S>::from_polynomials(const PolynomialMetric& metric) {
  std::vector<ComponentJetFn<S>> upper;
  const std::size_t n = metric.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      upper.push_back([p = metric.component(i, j)](std::span<const S> point, int order) {
        return jet_eval<S>(p, point, order);
      });
    }
  }
  MetricChart chart(metric.coords(), std::move(upper));
  chart.source_ = metric;
  return chart;
}

template <class S>
Jet<S> MetricChart<S>::component_jet(std::size_t i, std::size_t j, std::span<const S> point,
                                     int order) const {
  if (point.size() != dim()) {
    throw ArityMismatch("point has " + std::to_string(point.size()) + " coordinates, chart has " +
                        std::to_string(dim()));
  }
  Jet<S> jet = upper_[upper_index(dim(), i, j)](point, order);
  if (jet.num_variables() != dim()) throw ArityMismatch("component jet has wrong arity");
  return jet.order() == order ? jet : jet.truncated(order);
}

template <class S>
std::string format_point(std::span<const S> point) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i) os << ", ";
    os << point[i];
  }
  os << ")";
  return os.str();
}

template <class S>
Matrix<Jet<S>> metric_jets_at(const MetricChart<S>& chart, std::span<const S> point, int order) {
  if (order > kDefaultJetOrder) throw PreconditionError("metric jets are limited to order 4");
  const std::size_t n = chart.dim();
  if (point.size() != n) {
    throw ArityMismatch("point has " + std::to_string(point.size()) + " coordinates, chart has " +
                        std::to_string(n));
  }
  std::vector<Jet<S>> data;
  data.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      data.push_back(i <= j ? chart.component_jet(i, j, point, order) : Jet<S>(n, order));
    }
  }
  Matrix<Jet<S>> g(n, n, std::move(data));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
  }
  return g;
}

namespace {

template <class S>
bool degenerate_constant(const S& det, double scale) {
  if constexpr (is_exact_v<S>) {
    return det.is_zero();
  } else {
    return std::abs(det) <= 1e-13 * scale;
  }
}

}  // namespace

template <class S>
Matrix<Jet<S>> inverse_jets(const Matrix<Jet<S>>& g, const std::string& where) {
  const std::size_t n = g.rows();
  const Jet<S> det = determinant(g);
  // Float mode compares |det| with the Hadamard bound, the product of the
  // row lengths, so rows of very different size do not trigger it.
  double scale = 1.0;
  if constexpr (!is_exact_v<S>) {
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += g(i, j).value() * g(i, j).value();
      scale *= std::sqrt(row);
    }
  }
  if (degenerate_constant(det.value(), scale)) {
    throw DegenerateMetric("metric is degenerate at " + where);
  }
  const Jet<S> inv_det = det.reciprocal();
  Matrix<Jet<S>> adj = adjugate(g);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) adj(i, j) = adj(i, j) * inv_det;
  }
  return adj;
}

template <class S>
Matrix<Jet<S>> inverse_metric_jet_at(const MetricChart<S>& chart, std::span<const S> point, int order) {
  return inverse_jets(metric_jets_at(chart, point, order), format_point(point));
}

template <class S>
Signature inertia(const Matrix<S>& symmetric) {
  Matrix<S> a = symmetric;
  const std::size_t n = a.rows();
  double tolerance = 0.0;
  if constexpr (!is_exact_v<S>) {
    // Congruence by diag(1 / sqrt(row length)) keeps the inertia and evens out row scales.
    std::vector<double> scale(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += a(i, j) * a(i, j);
      if (row > 0.0) scale[i] = 1.0 / std::sqrt(std::sqrt(row));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a(i, j) *= scale[i] * scale[j];
    }
    double largest = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) largest = std::max(largest, std::abs(a(i, j)));
    }
    tolerance = 1e-12 * largest;
  }
  const auto negligible = [&](const S& x) {
    if constexpr (is_exact_v<S>) {
      return x.is_zero();
    } else {
      return std::abs(x) <= tolerance;
    }
  };
  const auto swap_index = [&](std::size_t p, std::size_t q) {
    for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(q, j));
    for (std::size_t i = 0; i < n; ++i) std::swap(a(i, p), a(i, q));
  };

  Signature sig;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && negligible(a(pivot, pivot))) ++pivot;
    if (pivot == n) {
      // No usable diagonal entry: x_i -> x_i + x_j turns an off-diagonal
      // entry into a diagonal one (a_ii becomes 2 a_ij).
      bool found = false;
      for (std::size_t i = k; i < n && !found; ++i) {
        for (std::size_t j = i + 1; j < n && !found; ++j) {
          if (negligible(a(i, j))) continue;
          for (std::size_t c = 0; c < n; ++c) a(i, c) = a(i, c) + a(j, c);
          for (std::size_t r = 0; r < n; ++r) a(r, i) = a(r, i) + a(r, j);
          pivot = i;
          found = true;
        }
      }
      if (!found) {
        sig.zeros += n - k;
        break;
      }
    }
    if (pivot != k) swap_index(pivot, k);
    const S d = a(k, k);
    (sign_of(d) > 0 ? sig.positives : sig.negatives) += 1;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (is_zero(a(r, k))) continue;
      const S f = a(r, k) / d;
      for (std::size_t c = k; c < n; ++c) a(r, c) = a(r, c) - f * a(k, c);
      for (std::size_t c = k; c < n; ++c) a(c, r) = a(r, c);
    }
  }
  return sig;
}

template <class S>
Signature signature_at(const MetricChart<S>& chart, std::span<const S> point) {
  const Signature sig = inertia(values(metric_jets_at(chart, point, 0)));
  if (sig.zeros != 0) throw DegenerateMetric("metric is degenerate at " + format_point(point));
  return sig;
}

#define COTTON_INSTANTIATE_CHART(S)                                                              \
  template class MetricChart<S>;                                                                 \
  template std::string format_point<S>(std::span<const S>);                                      \
  template Matrix<Jet<S>> metric_jets_at<S>(const MetricChart<S>&, std::span<const S>, int);     \
  template Matrix<Jet<S>> inverse_jets<S>(const Matrix<Jet<S>>&, const std::string&);            \
  template Matrix<Jet<S>> inverse_metric_jet_at<S>(const MetricChart<S>&, std::span<const S>, int); \
  template Signature inertia<S>(const Matrix<S>&);                                               \
  template Signature signature_at<S>(const MetricChart<S>&, std::span<const S>);

COTTON_INSTANTIATE_CHART(Rational)
COTTON_INSTANTIATE_CHART(double)

#undef COTTON_INSTANTIATE_CHART

}  // namespace cotton
