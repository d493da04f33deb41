#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cotton/chart.hpp"
#include "cotton/jet.hpp"
#include "cotton/tensor.hpp"

namespace cotton {

// Conventions, fixed so the model family reproduces Ric = -3x dt(x)dt and
// C = 3 (dt ^ dx) (x) dt with u ^ v = u (x) v - v (x) u:
//
//   R(X,Y)Z    = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
//   R_ijkl     = g(R(d_i, d_j) d_k, d_l)
//   Ric_jk     = R^i_ijk           (round spheres have positive s)
//   P          = Ric - s g / (2(n-1))
//   C_ijk      = (nabla_i P)_jk - (nabla_j P)_ik
//   (nabla T)_i... : derivative index first.
//
// Every tensor is computed at a point as a tensor of jets; each derivative
// consumes one jet order, so order-4 metric jets give Christoffel symbols
// at order 3, curvature at 2, Cotton at 1 and nabla C at 0.

template <class S>
using JetTensor = Tensor<Jet<S>>;

/// Metric and inverse metric jets at a point.
template <class S>
struct MetricData {
  std::vector<S> point;
  Matrix<Jet<S>> g;
  Matrix<Jet<S>> g_inv;

  std::size_t dim() const { return g.rows(); }
  std::size_t nvars() const { return g.rows(); }
  int order() const { return g(0, 0).order(); }
};

template <class S>
MetricData<S> metric_data_at(const MetricChart<S>& chart, std::span<const S> point,
                             int order = kDefaultJetOrder);

/// Gamma^k_ij with slots (Up, Down, Down).
template <class S>
JetTensor<S> christoffel(const MetricData<S>& md);
/// Fully covariant R_ijkl.
template <class S>
JetTensor<S> riemann(const MetricData<S>& md, const JetTensor<S>& gamma);
template <class S>
JetTensor<S> ricci(const JetTensor<S>& gamma);
template <class S>
Jet<S> scalar_curvature(const MetricData<S>& md, const JetTensor<S>& ric);
template <class S>
JetTensor<S> schouten(const MetricData<S>& md, const JetTensor<S>& ric, const Jet<S>& s);
/// nabla T with the derivative slot first. Mixed slots are supported.
template <class S>
JetTensor<S> covariant_derivative(const JetTensor<S>& gamma, const JetTensor<S>& t);
template <class S>
JetTensor<S> cotton(const JetTensor<S>& nabla_schouten);
/// W = Riem - A (Kulkarni-Nomizu) g with A = P / (n - 2); needs n >= 3.
template <class S>
JetTensor<S> weyl(const MetricData<S>& md, const JetTensor<S>& riem, const JetTensor<S>& schouten);
/// The metric itself as a covariant rank-2 tensor of jets.
template <class S>
JetTensor<S> metric_tensor(const MetricData<S>& md);

/// Everything the pipeline produces at one point.
template <class S>
struct PointCurvature {
  MetricData<S> metric;
  JetTensor<S> christoffel;
  JetTensor<S> riemann;
  JetTensor<S> ricci;
  Jet<S> scalar;
  JetTensor<S> schouten;
  JetTensor<S> nabla_schouten;
  JetTensor<S> cotton;
  /// Present when the metric jets reach order 4.
  std::optional<JetTensor<S>> nabla_cotton;
};

template <class S>
PointCurvature<S> curvature_at(const MetricChart<S>& chart, std::span<const S> point,
                               int order = kDefaultJetOrder);

template <class S>
JetTensor<S> christoffel_at(const MetricChart<S>& chart, std::span<const S> point,
                            int order = kDefaultJetOrder);
template <class S>
JetTensor<S> ricci_at(const MetricChart<S>& chart, std::span<const S> point, int order = kDefaultJetOrder);
template <class S>
Jet<S> scalar_curvature_at(const MetricChart<S>& chart, std::span<const S> point,
                           int order = kDefaultJetOrder);
template <class S>
JetTensor<S> schouten_at(const MetricChart<S>& chart, std::span<const S> point,
                         int order = kDefaultJetOrder);
template <class S>
JetTensor<S> covariant_derivative_at(const MetricChart<S>& chart, std::span<const S> point,
                                     const JetTensor<S>& t, int order = kDefaultJetOrder);
template <class S>
JetTensor<S> cotton_at(const MetricChart<S>& chart, std::span<const S> point, int order = kDefaultJetOrder);
/// Throws InsufficientJetOrder unless order >= 4.
template <class S>
JetTensor<S> nabla_cotton_at(const MetricChart<S>& chart, std::span<const S> point,
                             int order = kDefaultJetOrder);
template <class S>
JetTensor<S> weyl_at(const MetricChart<S>& chart, std::span<const S> point, int order = kDefaultJetOrder);

/// Max-abs defect of g^ij (nabla P)_ijk = d_k (g^ij P_ij), compared as
/// order-1 jets.
template <class S>
S div_schouten_defect(const PointCurvature<S>& pc);

/// Exact in exact mode; within `tolerance` (absolute) in float mode.
template <class S>
bool div_schouten_check(const MetricChart<S>& chart, std::span<const S> point, double tolerance = 1e-9);

/// Max-abs defects of the three Cotton symmetries at the point:
/// C_ijk + C_jik, C_ijk + C_jki + C_kij, and g^ik C_ijk.
template <class S>
struct CottonSymmetryDefects {
  S antisymmetry{0};
  S cyclic{0};
  S trace{0};
};

template <class S>
CottonSymmetryDefects<S> cotton_symmetry_defects(const PointCurvature<S>& pc);

/// Max-abs of R_ijkl + R_jkil + R_kijl over all indices, at the point.
template <class S>
S first_bianchi_defect(const JetTensor<S>& riem);

/// Max-abs coefficient of nabla g, as jets.
template <class S>
S metric_compatibility_defect(const MetricData<S>& md, const JetTensor<S>& gamma);

/// Constant terms of every component.
template <class S>
Tensor<S> tensor_values(const JetTensor<S>& t) {
  return t.map([](const Jet<S>& j) { return j.value(); });
}

}  // namespace cotton
