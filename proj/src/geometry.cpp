#include "cotton/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cotton/parser.hpp"

namespace cotton {

namespace {

template <class S>
bool negligible(const S& x, double bound) {
  if constexpr (is_exact_v<S>) {
    (void)bound;
    return x.is_zero();
  } else {
    return std::abs(x) <= bound;
  }
}

template <class S>
double metric_scale(const Matrix<Jet<S>>& g) {
  double best = 1.0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) best = std::max(best, std::abs(to_double(g(i, j).value())));
  }
  return best;
}

template <class S>
S max_abs_values(const Tensor<S>& t) {
  S best{0};
  for (const auto& x : t.data()) best = std::max(best, abs_value(x));
  return best;
}

template <class S>
std::string scalar_text(const S& x) {
  if constexpr (is_exact_v<S>) {
    return x.to_string();
  } else {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
  }
}

template <class S>
std::vector<std::string> point_text(std::span<const S> point) {
  std::vector<std::string> out;
  for (const auto& x : point) out.push_back(scalar_text(x));
  return out;
}

template <class S>
Tensor<S> cotton_values(const PointCurvature<S>& pc) {
  return tensor_values(pc.cotton);
}

}  // namespace

ModelSpec::ModelSpec(const Polynomial& a) : a_(model_coords()) {
  try {
    a_ = a.rebased({"t"}).rebased(model_coords());
  } catch (const ArityMismatch&) {
    throw InputError("the model function a must depend on t only");
  }
}

ModelSpec ModelSpec::parse(const std::string& a_source) { return ModelSpec(parse_expr(a_source, {"t"})); }

PolynomialMetric build_model(const ModelSpec& spec) {
  const auto& coords = model_coords();
  const Polynomial x = Polynomial::variable(coords, 2);
  std::map<std::pair<std::size_t, std::size_t>, Polynomial> components;
  components.emplace(std::make_pair(0, 0), x.pow(3) + spec.a() * x);
  components.emplace(std::make_pair(0, 1), Polynomial::constant(coords, Rational(1, 2)));
  components.emplace(std::make_pair(2, 2), Polynomial::constant(coords, Rational(1)));
  return PolynomialMetric(coords, components);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ConformallyFlat: return "ConformallyFlat";
    case Verdict::ECS: return "ECS";
    case Verdict::CottonParallelOnly: return "CottonParallelOnly";
    case Verdict::NonParallel: return "NonParallel";
    case Verdict::Mixed: return "Mixed";
  }
  return "?";
}

Verdict verdict_from(const std::vector<PointEvidence>& evidence) {
  std::size_t used = 0;
  std::size_t flat = 0;
  bool parallel = true;
  for (const auto& e : evidence) {
    if (e.skipped) continue;
    ++used;
    if (e.cotton_vanishes) ++flat;
    if (!e.nabla_cotton_vanishes) parallel = false;
  }
  if (used == 0) return Verdict::Mixed;
  if (flat == used) return Verdict::ConformallyFlat;
  if (parallel) return flat == 0 ? Verdict::ECS : Verdict::CottonParallelOnly;
  return Verdict::NonParallel;
}

template <class S>
ChartClassification classify_chart(const MetricChart<S>& chart, const std::vector<std::vector<S>>& points,
                                   const ClassifyOptions& options) {
  ChartClassification result;
  result.mode = is_exact_v<S> ? "exact" : "float";
  result.sample_count = points.size();
  for (const auto& p : points) {
    PointEvidence e;
    e.point = point_text<S>(p);
    try {
      const PointCurvature<S> pc = curvature_at<S>(chart, p, kDefaultJetOrder);
      const double bound = options.tolerance * metric_scale(pc.metric.g);
      const S c = max_abs_values(cotton_values(pc));
      const S nc = max_abs_values(tensor_values(*pc.nabla_cotton));
      e.cotton_norm = scalar_text(c);
      e.nabla_cotton_norm = scalar_text(nc);
      e.cotton_vanishes = negligible(c, bound);
      e.nabla_cotton_vanishes = negligible(nc, bound);
    } catch (const DegenerateMetric& err) {
      if (!options.allow_skip) throw;
      e.skipped = true;
      e.note = err.what();
    }
    result.evidence.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < result.evidence.size(); ++i) {
    const auto& e = result.evidence[i];
    if (!e.skipped && !e.nabla_cotton_vanishes) {
      result.witness = i;
      break;
    }
  }
  result.verdict = verdict_from(result.evidence);
  return result;
}

template <class S>
InnerProduct3<S> inner_product_at(const MetricChart<S>& chart, std::span<const S> point) {
  if (chart.dim() != 3) throw PreconditionError("pointwise Cotton algebra needs a 3-dimensional chart");
  return InnerProduct3<S>(values(metric_jets_at(chart, point, 0)));
}

template <class S>
Array27<S> to_array27(const Tensor<S>& t) {
  if (t.dim() != 3 || t.rank() != 3) throw ArityMismatch("expected a rank-3 tensor in dimension 3");
  Array27<S> out;
  std::copy(t.data().begin(), t.data().end(), out.begin());
  return out;
}

namespace {

template <class S>
Array27<S> cleaned_cotton(const PointCurvature<S>& pc, double tolerance) {
  Array27<S> c = to_array27(cotton_values(pc));
  if constexpr (!is_exact_v<S>) {
    if (negligible(max_abs(c), tolerance * metric_scale(pc.metric.g))) c.fill(0.0);
  }
  return c;
}

template <class S>
Subspace<S> distribution_from(const PointCurvature<S>& pc, const InnerProduct3<S>& ip, double tolerance) {
  const CottonLike<S> c(cleaned_cotton(pc, tolerance), ip, std::max(tolerance, 1e-10));
  return kernel(c, ip);
}

template <class S>
bool in_span(const Vec3<S>& x, const Subspace<S>& d, double tolerance) {
  if (d.dim() == 3) return true;
  double size = 0.0;
  for (const auto& c : x) size = std::max(size, std::abs(to_double(c)));
  if (d.dim() == 0) return negligible(std::max({abs_value(x[0]), abs_value(x[1]), abs_value(x[2])}), tolerance);
  const Vec3<S>& b = d.basis[0];
  const Vec3<S> cr{x[1] * b[2] - x[2] * b[1], x[2] * b[0] - x[0] * b[2], x[0] * b[1] - x[1] * b[0]};
  const double bound = tolerance * std::max(1.0, size);
  return negligible(cr[0], bound) && negligible(cr[1], bound) && negligible(cr[2], bound);
}

template <class S>
std::vector<Jet<S>> lowered_field(const MetricData<S>& md, std::span<const S> u) {
  const std::size_t n = md.dim();
  if (u.size() != n) throw ArityMismatch("vector has wrong number of components");
  std::vector<Jet<S>> out;
  for (std::size_t i = 0; i < n; ++i) {
    Jet<S> acc(n, md.order());
    for (std::size_t j = 0; j < n; ++j) {
      if (!is_zero(u[j])) acc += md.g(i, j) * u[j];
    }
    out.push_back(std::move(acc));
  }
  return out;
}

/// f with Ric = -f ul (x) ul, checked up to `check_order` (0: at the point,
/// 1: to first order).
template <class S>
Jet<S> factor_ricci(const MetricData<S>& md, const JetTensor<S>& ric, std::span<const S> u, int check_order,
                    double tolerance) {
  const std::size_t n = md.dim();
  const std::vector<Jet<S>> ul = lowered_field(md, u);
  std::size_t a = 0;
  std::size_t b = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double m = std::abs(to_double(ul[i].value()) * to_double(ul[j].value()));
      if (m > best) {
        best = m;
        a = i;
        b = j;
      }
    }
  }
  if (best == 0.0) throw PreconditionError("u must be a nonzero vector");
  const Jet<S> f = -(ric(a, b) / (ul[a] * ul[b]));
  const double bound = tolerance * std::max(1.0, metric_scale(md.g));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Jet<S> defect = (ric(i, j) + f * ul[i] * ul[j]).truncated(check_order);
      for (const auto& c : defect.coefficients()) {
        if (!negligible(c, bound)) {
          throw NotRankOneForm("Ricci tensor is not a multiple of u (x) u at " + format_point<S>(md.point));
        }
      }
    }
  }
  return f;
}

}  // namespace

template <class S>
Subspace<S> distribution_D_at(const MetricChart<S>& chart, std::span<const S> point, double tolerance) {
  const InnerProduct3<S> ip = inner_product_at(chart, point);
  return distribution_from(curvature_at<S>(chart, point, 3), ip, tolerance);
}

template <class S>
bool ricci_image_in_D_check(const MetricChart<S>& chart, std::span<const S> point, double tolerance) {
  const InnerProduct3<S> ip = inner_product_at(chart, point);
  const PointCurvature<S> pc = curvature_at<S>(chart, point, 3);
  const Subspace<S> d = distribution_from(pc, ip, tolerance);
  const Matrix<S> g_inv = values(pc.metric.g_inv);
  const Tensor<S> ric = tensor_values(pc.ricci);
  for (std::size_t j = 0; j < 3; ++j) {
    Vec3<S> column{S{0}, S{0}, S{0}};
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t k = 0; k < 3; ++k) column[i] = column[i] + g_inv(i, k) * ric(k, j);
    }
    if (!in_span(column, d, tolerance)) return false;
  }
  return true;
}

template <class S>
Jet<S> f_jet_at(const MetricChart<S>& chart, std::span<const S> point, std::span<const S> u, double tolerance) {
  const MetricData<S> md = metric_data_at(chart, point, kDefaultJetOrder);
  return factor_ricci(md, ricci(christoffel(md)), u, 1, tolerance);
}

template <class S>
S extract_f_at(const MetricChart<S>& chart, std::span<const S> point, std::span<const S> u, double tolerance) {
  const MetricData<S> md = metric_data_at(chart, point, 2);
  return factor_ricci(md, ricci(christoffel(md)), u, 0, tolerance).value();
}

template <class S>
GradientIdentityResult<S> verify_gradient_identity_at(const MetricChart<S>& chart, std::span<const S> point,
                                                       std::span<const S> u, double tolerance) {
  GradientIdentityResult<S> result;
  const PointCurvature<S> pc = curvature_at<S>(chart, point, 3);
  const std::size_t n = chart.dim();
  Jet<S> f(n, 0);
  try {
    f = factor_ricci(pc.metric, pc.ricci, u, 1, tolerance);
  } catch (const NotRankOneForm& err) {
    result.holds = false;
    result.note = err.what();
    return result;
  }
  std::vector<S> df;
  std::vector<S> ul;
  for (const auto& jet : lowered_field(pc.metric, u)) ul.push_back(jet.value());
  for (std::size_t i = 0; i < n; ++i) df.push_back(f.derivative(i).value());

  const Tensor<S> c = cotton_values(pc);
  S worst{0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const S predicted = (ul[i] * df[j] - df[i] * ul[j]) * ul[k];
        worst = std::max(worst, abs_value(c(i, j, k) - predicted));
      }
    }
  }
  result.residual = worst;
  result.holds = negligible(worst, tolerance * metric_scale(pc.metric.g));
  return result;
}

template <class S>
bool scalar_flat_check(const MetricChart<S>& chart, const std::vector<std::vector<S>>& points, double tolerance) {
  for (const auto& p : points) {
    const PointCurvature<S> pc = curvature_at<S>(chart, p, 3);
    const double bound = tolerance * metric_scale(pc.metric.g);
    if (!negligible(pc.scalar.value(), bound)) return false;
    const Tensor<S> ric = tensor_values(pc.ricci);
    const Tensor<S> sch = tensor_values(pc.schouten);
    for (std::size_t k = 0; k < ric.size(); ++k) {
      if (!negligible(S(ric.at_flat(k) - sch.at_flat(k)), bound)) {
        throw Error("scalar-flat point with P != Ric at " + format_point<S>(p));
      }
    }
  }
  return true;
}

template <class S>
std::vector<ModelCheck> verify_model(const ModelSpec& spec, const std::vector<std::vector<S>>& points,
                                     double tolerance) {
  const MetricChart<S> chart = MetricChart<S>::from_polynomials(build_model(spec));
  std::vector<ModelCheck> checks{
      {"Ric = -3x dt(x)dt", true, ""},       {"C = 3 (dt^dx)(x)dt", true, ""},
      {"nabla C = 0", true, ""},             {"s = 0", true, ""},
      {"D = span{d_s}", true, ""},           {"image(Ric) in D", true, ""},
      {"C = (u ^ grad f)(x)u, u = d_s", true, ""},
  };
  const auto fail = [&](std::size_t which, const std::vector<S>& p, const std::string& why) {
    if (!checks[which].passed) return;
    checks[which].passed = false;
    checks[which].detail = why + " at " + format_point<S>(p);
  };
  const std::vector<S> d_s{S{0}, S{1}, S{0}};

  for (const auto& p : points) {
    const PointCurvature<S> pc = curvature_at<S>(chart, p, kDefaultJetOrder);
    const double bound = tolerance * metric_scale(pc.metric.g);
    const S& x = p[2];

    const Tensor<S> ric = tensor_values(pc.ricci);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        const S expected = (i == 0 && j == 0) ? S(S{-3} * x) : S{0};
        if (!negligible(S(ric(i, j) - expected), bound)) fail(0, p, "Ric component mismatch");
      }
    }

    const Tensor<S> c = cotton_values(pc);
    for (std::size_t k = 0; k < 27; ++k) {
      S expected{0};
      if (k == idx27(0, 2, 0)) expected = S{3};
      if (k == idx27(2, 0, 0)) expected = S{-3};
      if (!negligible(S(c.at_flat(k) - expected), bound)) fail(1, p, "Cotton component mismatch");
    }

    if (!negligible(max_abs_values(tensor_values(*pc.nabla_cotton)), bound)) fail(2, p, "nabla C != 0");
    if (!negligible(pc.scalar.value(), bound)) fail(3, p, "s != 0");

    const InnerProduct3<S> ip = inner_product_at<S>(chart, p);
    const Subspace<S> d = distribution_from(pc, ip, tolerance);
    if (d.dim() != 1 || !in_span(Vec3<S>{S{0}, S{1}, S{0}}, d, tolerance)) {
      fail(4, p, "kernel of C is not span{d_s}");
    }
    if (!ricci_image_in_D_check<S>(chart, p, tolerance)) fail(5, p, "Ricci image leaves D");
    const auto g = verify_gradient_identity_at<S>(chart, p, d_s, tolerance);
    if (!g.holds) fail(6, p, g.note.empty() ? "residual " + scalar_text(g.residual) : g.note);
  }
  return checks;
}

#define COTTON_INSTANTIATE_GEOMETRY(S)                                                                          \
  template ChartClassification classify_chart<S>(const MetricChart<S>&, const std::vector<std::vector<S>>&,      \
                                                 const ClassifyOptions&);                                        \
  template InnerProduct3<S> inner_product_at<S>(const MetricChart<S>&, std::span<const S>);                      \
  template Array27<S> to_array27<S>(const Tensor<S>&);                                                          \
  template Subspace<S> distribution_D_at<S>(const MetricChart<S>&, std::span<const S>, double);                 \
  template bool ricci_image_in_D_check<S>(const MetricChart<S>&, std::span<const S>, double);                   \
  template Jet<S> f_jet_at<S>(const MetricChart<S>&, std::span<const S>, std::span<const S>, double);           \
  template S extract_f_at<S>(const MetricChart<S>&, std::span<const S>, std::span<const S>, double);            \
  template GradientIdentityResult<S> verify_gradient_identity_at<S>(const MetricChart<S>&, std::span<const S>,  \
                                                                    std::span<const S>, double);                \
  template bool scalar_flat_check<S>(const MetricChart<S>&, const std::vector<std::vector<S>>&, double);        \
  template std::vector<ModelCheck> verify_model<S>(const ModelSpec&, const std::vector<std::vector<S>>&, double);

COTTON_INSTANTIATE_GEOMETRY(Rational)
COTTON_INSTANTIATE_GEOMETRY(double)

#undef COTTON_INSTANTIATE_GEOMETRY

}  // namespace cotton
