#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cotton/jet.hpp"
#include "cotton/linalg.hpp"
#include "cotton/polynomial.hpp"

namespace cotton {

/// Metric whose components are polynomials over the chart coordinates.
/// Only the upper triangle is stored.
class PolynomialMetric {
 public:
  /// Unlisted pairs default to 0; (i, j) and (j, i) name the same entry.
  PolynomialMetric(std::vector<std::string> coords,
                   const std::map<std::pair<std::size_t, std::size_t>, Polynomial>& components);

  std::size_t dim() const { return coords_.size(); }
  const std::vector<std::string>& coords() const { return coords_; }
  const Polynomial& component(std::size_t i, std::size_t j) const;

 private:
  std::vector<std::string> coords_;
  std::vector<Polynomial> upper_;
};

std::size_t upper_index(std::size_t dim, std::size_t i, std::size_t j);

template <class S>
using ComponentJetFn = std::function<Jet<S>(std::span<const S> point, int order)>;

/// A metric in one coordinate chart, given by jet-producing component
/// functions. Polynomial metrics keep their source for reporting.
template <class S>
class MetricChart {
 public:
  /// `upper` holds the dim*(dim+1)/2 upper-triangle components row by row.
  MetricChart(std::vector<std::string> coords, std::vector<ComponentJetFn<S>> upper);

  static MetricChart from_polynomials(const PolynomialMetric& metric);

  std::size_t dim() const { return coords_.size(); }
  const std::vector<std::string>& coords() const { return coords_; }
  const std::optional<PolynomialMetric>& polynomial_source() const { return source_; }

  Jet<S> component_jet(std::size_t i, std::size_t j, std::span<const S> point, int order) const;

 private:
  std::vector<std::string> coords_;
  std::vector<ComponentJetFn<S>> upper_;
  std::optional<PolynomialMetric> source_;
};

struct Signature {
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::size_t zeros = 0;

  std::size_t index() const { return negatives; }
  bool operator==(const Signature&) const = default;
};

template <class S>
std::string format_point(std::span<const S> point);

/// Entry (i, j) is the order-`order` jet of g_ij at the point.
template <class S>
Matrix<Jet<S>> metric_jets_at(const MetricChart<S>& chart, std::span<const S> point,
                              int order = kDefaultJetOrder);

/// Inverse of a matrix of jets via adjugate over determinant. Throws
/// DegenerateMetric when the determinant's constant term vanishes.
template <class S>
Matrix<Jet<S>> inverse_jets(const Matrix<Jet<S>>& g, const std::string& where);

template <class S>
Matrix<Jet<S>> inverse_metric_jet_at(const MetricChart<S>& chart, std::span<const S> point,
                                     int order = kDefaultJetOrder);

/// Inertia of a symmetric matrix by congruence (symmetric Gaussian)
/// reduction; no eigenvalues are computed.
template <class S>
Signature inertia(const Matrix<S>& symmetric);

template <class S>
Signature signature_at(const MetricChart<S>& chart, std::span<const S> point);

template <class S>
Matrix<S> values(const Matrix<Jet<S>>& jets) {
  return jets.map([](const Jet<S>& j) { return j.value(); });
}

}  // namespace cotton
