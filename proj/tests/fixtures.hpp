#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cotton/chart.hpp"
#include "cotton/geometry.hpp"
#include "cotton/parser.hpp"

namespace cotton::testing {

/// Metric from "i,j" -> expression pairs over `coords`.
inline PolynomialMetric metric_of(const std::vector<std::string>& coords,
                                  const std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::string>>& comps) {
  std::map<std::pair<std::size_t, std::size_t>, Polynomial> m;
  for (const auto& [ij, src] : comps) m.emplace(ij, parse_expr(src, coords));
  return PolynomialMetric(coords, m);
}

inline PolynomialMetric model(const std::string& a) { return build_model(ModelSpec::parse(a)); }

/// The model with g_tt replaced by `gtt` and g_ts by `gts`.
inline PolynomialMetric model_variant(const std::string& gtt, const std::string& gts = "1/2") {
  return metric_of(model_coords(), {{{0, 0}, gtt}, {{0, 1}, gts}, {{2, 2}, "1"}});
}

inline PolynomialMetric euclidean3() {
  return metric_of({"x", "y", "z"}, {{{0, 0}, "1"}, {{1, 1}, "1"}, {{2, 2}, "1"}});
}

/// Unit round n-sphere in stereographic coordinates,
/// g = 4 / (1 + |x|^2)^2 delta, as a chart of jet-valued component functions.
template <class S>
MetricChart<S> stereographic_sphere(std::size_t n) {
  std::vector<std::string> coords;
  for (std::size_t i = 0; i < n; ++i) coords.push_back("x" + std::to_string(i + 1));
  Polynomial r2 = Polynomial::constant(coords, Rational(1));
  for (std::size_t i = 0; i < n; ++i) r2 += Polynomial::variable(coords, i).pow(2);
  std::vector<ComponentJetFn<S>> upper;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (i != j) {
        upper.push_back([n](std::span<const S>, int order) { return Jet<S>(n, order); });
      } else {
        upper.push_back([r2](std::span<const S> p, int order) {
          const Jet<S> inv = jet_eval<S>(r2, p, order).reciprocal();
          return inv * inv * scalar_from<S>(Rational(4));
        });
      }
    }
  }
  return MetricChart<S>(coords, std::move(upper));
}

template <class S>
std::vector<S> point_of(std::initializer_list<Rational> xs) {
  std::vector<S> out;
  for (const auto& x : xs) out.push_back(scalar_from<S>(x));
  return out;
}

}  // namespace cotton::testing
