#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cotton/chart.hpp"
#include "cotton/cotton_algebra.hpp"
#include "cotton/curvature.hpp"
#include "cotton/polynomial.hpp"

namespace cotton {

/// The function a(t) of the model metric (x^3 + a(t) x) dt^2 + dt ds + dx^2.
class ModelSpec {
 public:
  /// `a` may only involve the variable t.
  explicit ModelSpec(const Polynomial& a);
  static ModelSpec parse(const std::string& a_source);

  /// a(t) as a polynomial over the model coordinates (t, s, x).
  const Polynomial& a() const { return a_; }

 private:
  Polynomial a_;
};

inline const std::vector<std::string>& model_coords() {
  static const std::vector<std::string> coords{"t", "s", "x"};
  return coords;
}

/// g_tt = x^3 + a(t) x, g_ts = 1/2 (dt ds as a symmetric product),
/// g_xx = 1, all other components 0.
PolynomialMetric build_model(const ModelSpec& spec);

enum class Verdict { ConformallyFlat, ECS, CottonParallelOnly, NonParallel, Mixed };

std::string to_string(Verdict v);

struct PointEvidence {
  std::vector<std::string> point;
  bool skipped = false;
  std::string note;
  /// Max-abs component of C and of nabla C; exact text in exact mode.
  std::string cotton_norm;
  std::string nabla_cotton_norm;
  bool cotton_vanishes = false;
  bool nabla_cotton_vanishes = false;
};

struct ChartClassification {
  Verdict verdict = Verdict::Mixed;
  std::vector<PointEvidence> evidence;
  std::size_t sample_count = 0;
  std::string mode;
  /// First sample with nabla C != 0, if any.
  std::optional<std::size_t> witness;
};

struct ClassifyOptions {
  /// Float mode: a tensor vanishes when its max-abs component is at most
  /// tolerance * max(1, max |g_ij|) at the point.
  double tolerance = 1e-9;
  /// Skip (and report) degenerate samples instead of failing.
  bool allow_skip = false;
};

/// Pure fold over the non-skipped records:
///   C = 0 everywhere                                   -> ConformallyFlat
///   nabla C = 0 everywhere, C != 0 everywhere          -> ECS
///   nabla C = 0 everywhere, C = 0 at some samples only -> CottonParallelOnly
///   nabla C != 0 somewhere                             -> NonParallel
/// Mixed is left for the case with no usable (non-skipped) samples.
Verdict verdict_from(const std::vector<PointEvidence>& evidence);

/// Sampled, chart-local classification.
template <class S>
ChartClassification classify_chart(const MetricChart<S>& chart, const std::vector<std::vector<S>>& points,
                                   const ClassifyOptions& options = {});

/// The metric at a point as an inner product (3-dimensional charts only).
template <class S>
InnerProduct3<S> inner_product_at(const MetricChart<S>& chart, std::span<const S> point);

/// Values of a rank-3 covariant 3-dimensional tensor as a flat array.
template <class S>
Array27<S> to_array27(const Tensor<S>& t);

/// Kernel of the pointwise Cotton tensor.
template <class S>
Subspace<S> distribution_D_at(const MetricChart<S>& chart, std::span<const S> point, double tolerance = 1e-9);

/// Every column of the Ricci endomorphism Ric^i_j lies in D.
template <class S>
bool ricci_image_in_D_check(const MetricChart<S>& chart, std::span<const S> point, double tolerance = 1e-9);

/// Jet of f with Ric = -f u (x) u (u lowered), u taken as a vector field
/// with constant components in the chart. Throws NotRankOneForm when Ric is
/// not proportional to u (x) u to first order, PreconditionError for u = 0.
template <class S>
Jet<S> f_jet_at(const MetricChart<S>& chart, std::span<const S> point, std::span<const S> u,
                double tolerance = 1e-9);

/// f at the point; only the pointwise proportionality is required.
template <class S>
S extract_f_at(const MetricChart<S>& chart, std::span<const S> point, std::span<const S> u,
               double tolerance = 1e-9);

template <class S>
struct GradientIdentityResult {
  bool holds = false;
  S residual{0};
  /// Set when the identity could not even be formed (Ric not rank one).
  std::string note;
};

/// Compares the Cotton tensor with (u ^ grad f) (x) u, all lowered.
template <class S>
GradientIdentityResult<S> verify_gradient_identity_at(const MetricChart<S>& chart, std::span<const S> point,
                                                       std::span<const S> u, double tolerance = 1e-9);

/// s = 0 at every sample; when it holds, also checks P = Ric there.
template <class S>
bool scalar_flat_check(const MetricChart<S>& chart, const std::vector<std::vector<S>>& points,
                       double tolerance = 1e-9);

struct ModelCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// The closed-form facts about the model at every sample point:
/// Ric = -3x dt(x)dt, C = 3 (dt ^ dx) (x) dt, nabla C = 0, s = 0,
/// D = span{d_s}, image of Ric in D, and C = (u ^ grad f) (x) u for u = d_s.
template <class S>
std::vector<ModelCheck> verify_model(const ModelSpec& spec, const std::vector<std::vector<S>>& points,
                                     double tolerance = 1e-9);

}  // namespace cotton
