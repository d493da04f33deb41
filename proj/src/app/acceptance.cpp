#include "cotton/app/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "cotton/app/commands.hpp"
#include "cotton/app/report.hpp"
#include "cotton/curvature.hpp"
#include "cotton/errors.hpp"
#include "cotton/geometry.hpp"
#include "cotton/parser.hpp"
#include "cotton/sampling.hpp"

namespace cotton::app {
namespace {

// Pinned tolerances of the float pipeline.
constexpr double kFloatZero = 1e-9;       // relative to max(1, max |g_ij|) at the point
constexpr double kFloatSymmetry = 1e-9;   // relative to max(1, max |nabla P|)
constexpr double kFloatNull = 1e-9;       // |<w,w>| relative to max(1, |w|^2 max |g|)
constexpr double kRoundTrip = 1e-12;      // absolute reconstruction residual
constexpr double kModeAgreement = 1e-8;   // relative to max(1, max |C_exact|)
constexpr double kRicciBudgetSeconds = 5.0;

constexpr std::size_t kModelPoints = 20;
constexpr std::size_t kRandomMetrics = 10;
constexpr std::size_t kRandomMetricPoints = 20;
constexpr std::size_t kTensorsPerSignature = 200;
constexpr std::size_t kUnitVectorsPerSignature = 50;
constexpr std::size_t kPairsPerSignature = 100;

/// Thrown inside a criterion to fail it with a message.
struct Failure {
  std::string message;
};

[[noreturn]] void fail(const std::string& message) { throw Failure{message}; }

struct Fixture {
  std::string name;
  PolynomialMetric metric;
  std::vector<std::vector<Rational>> points;
};

const std::vector<std::string>& model_a_values() {
  static const std::vector<std::string> a{"0", "t", "t^2 - 1"};
  return a;
}

std::vector<Fixture> model_fixtures(const AcceptanceOptions& opts) {
  std::vector<Fixture> out;
  std::uint64_t salt = 0;
  for (const auto& a : model_a_values()) {
    PolynomialMetric m = build_model(ModelSpec::parse(a));
    if (opts.fault == "model-metric") {
      std::map<std::pair<std::size_t, std::size_t>, Polynomial> comps;
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i; j < 3; ++j) comps.emplace(std::make_pair(i, j), m.component(i, j));
      }
      comps.at({0, 0}) += parse_expr("x^2", model_coords());
      m = PolynomialMetric(model_coords(), comps);
    }
    Rng rng(opts.seed + 101 * ++salt);
    auto pts = sample_nondegenerate_points(MetricChart<Rational>::from_polynomials(m), rng, kModelPoints);
    out.push_back(Fixture{"a(t) = " + a, std::move(m), std::move(pts)});
  }
  return out;
}

std::vector<Fixture> random_metric_fixtures(const AcceptanceOptions& opts) {
  static const std::vector<std::vector<long>> bases{{1, 1, 1}, {1, 1, -1}, {1, -1, -1}};
  static const std::vector<std::string> coords{"x", "y", "z"};
  std::vector<Fixture> out;
  Rng rng(opts.seed + 7);
  for (std::size_t k = 0; k < kRandomMetrics; ++k) {
    PolynomialMetric m = random_polynomial_metric(rng, coords, bases[k % bases.size()]);
    auto pts = sample_nondegenerate_points(MetricChart<Rational>::from_polynomials(m), rng, kRandomMetricPoints);
    out.push_back(Fixture{"random metric " + std::to_string(k + 1), std::move(m), std::move(pts)});
  }
  return out;
}

template <class S>
std::vector<S> to_scalars(const std::vector<Rational>& p) {
  std::vector<S> out;
  for (const auto& x : p) out.push_back(scalar_from<S>(x));
  return out;
}

template <class S>
double metric_scale(const MetricChart<S>& chart, std::span<const S> p) {
  double scale = 1.0;
  const auto g = values(metric_jets_at<S>(chart, p, 0));
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) scale = std::max(scale, std::abs(to_double(g(i, j))));
  }
  return scale;
}

template <class S>
bool negligible(const S& x, double bound) {
  if constexpr (is_exact_v<S>) {
    return x.is_zero();
  } else {
    return std::abs(x) <= bound;
  }
}

template <class S>
double max_abs_of(const Tensor<S>& t) {
  double best = 0.0;
  for (const auto& x : t.data()) best = std::max(best, std::abs(to_double(x)));
  return best;
}

template <class S>
std::string where(const Fixture& f, std::span<const S> p) {
  return f.name + " at " + format_point<S>(p);
}

std::string count_text(std::size_t n, const std::string& what) { return std::to_string(n) + " " + what; }

// 1. Ric = -3x dt(x)dt
template <class S>
std::string ricci_criterion(const std::vector<Fixture>& fixtures) {
  std::size_t n = 0;
  for (const auto& f : fixtures) {
    const auto chart = MetricChart<S>::from_polynomials(f.metric);
    for (const auto& rp : f.points) {
      const auto p = to_scalars<S>(rp);
      const double bound = kFloatZero * metric_scale<S>(chart, p);
      const Tensor<S> ric = tensor_values(ricci_at<S>(chart, p, 2));
      const S x = p[2];
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
          const S expected = (i == 0 && j == 0) ? S(S{-3} * x) : S{0};
          if (!negligible(S(ric(i, j) - expected), bound)) {
            fail("Ric = -3x dt(x)dt violated: R_" + std::string(1, "tsx"[i]) + std::string(1, "tsx"[j]) + " = " +
                 scalar_text(ric(i, j)) + ", expected " + scalar_text(expected) + ", " + where<S>(f, p));
          }
        }
      }
      ++n;
    }
  }
  return count_text(n, "points");
}

// 2. C = 3 (dt ^ dx) (x) dt
template <class S>
std::string cotton_criterion(const std::vector<Fixture>& fixtures) {
  std::size_t n = 0;
  for (const auto& f : fixtures) {
    const auto chart = MetricChart<S>::from_polynomials(f.metric);
    for (const auto& rp : f.points) {
      const auto p = to_scalars<S>(rp);
      const double bound = kFloatZero * metric_scale<S>(chart, p);
      const Tensor<S> c = tensor_values(cotton_at<S>(chart, p, 3));
      for (std::size_t k = 0; k < c.size(); ++k) {
        const auto idx = c.unflatten(k);
        S expected{0};
        if (idx == std::vector<std::size_t>{0, 2, 0}) expected = S{3};
        if (idx == std::vector<std::size_t>{2, 0, 0}) expected = S{-3};
        if (!negligible(S(c.at_flat(k) - expected), bound)) {
          fail("C = 3 (dt^dx)(x)dt violated: C_" + index_label(model_coords(), idx) + " = " +
               scalar_text(c.at_flat(k)) + ", expected " + scalar_text(expected) + ", " + where<S>(f, p));
        }
      }
      ++n;
    }
  }
  return count_text(n, "points, 27 components each");
}

// 3. nabla C = 0 on models, != 0 somewhere on the x^4 control
template <class S>
std::string parallel_criterion(const std::vector<Fixture>& fixtures, const AcceptanceOptions& opts) {
  std::size_t n = 0;
  for (const auto& f : fixtures) {
    const auto chart = MetricChart<S>::from_polynomials(f.metric);
    for (const auto& rp : f.points) {
      const auto p = to_scalars<S>(rp);
      const Tensor<S> nc = tensor_values(nabla_cotton_at<S>(chart, p, 4));
      for (const auto& v : nc.data()) {
        if (!negligible(v, kFloatZero * metric_scale<S>(chart, p))) {
          fail("nabla C = 0 violated: component " + scalar_text(v) + ", " + where<S>(f, p));
        }
      }
      ++n;
    }
  }
  std::map<std::pair<std::size_t, std::size_t>, Polynomial> comps;
  comps.emplace(std::make_pair(0, 0), parse_expr("x^3 + x^4", model_coords()));
  comps.emplace(std::make_pair(0, 1), parse_expr("1/2", model_coords()));
  comps.emplace(std::make_pair(2, 2), parse_expr("1", model_coords()));
  const PolynomialMetric control(model_coords(), comps);
  const auto chart = MetricChart<S>::from_polynomials(control);
  Rng rng(opts.seed + 3);
  const auto pts = sample_nondegenerate_points(MetricChart<Rational>::from_polynomials(control), rng, kModelPoints);
  std::size_t witnesses = 0;
  for (const auto& rp : pts) {
    const auto p = to_scalars<S>(rp);
    const Tensor<S> nc = tensor_values(nabla_cotton_at<S>(chart, p, 4));
    if (max_abs_of(nc) > kFloatZero * metric_scale<S>(chart, p)) ++witnesses;
  }
  if (witnesses == 0) fail("x^4 control: nabla C vanished at every sampled point");
  return count_text(n, "model points parallel") + "; control nonparallel at " + std::to_string(witnesses) + "/" +
         std::to_string(pts.size());
}

// 4. s = 0 and P = Ric
template <class S>
std::string scalar_flat_criterion(const std::vector<Fixture>& fixtures) {
  std::size_t n = 0;
  for (const auto& f : fixtures) {
    const auto chart = MetricChart<S>::from_polynomials(f.metric);
    for (const auto& rp : f.points) {
      const auto p = to_scalars<S>(rp);
      const double bound = kFloatZero * metric_scale<S>(chart, p);
      const PointCurvature<S> pc = curvature_at<S>(chart, p, 3);
      if (!negligible(pc.scalar.value(), bound)) {
        fail("s = 0 violated: s = " + scalar_text(pc.scalar.value()) + ", " + where<S>(f, p));
      }
      const Tensor<S> ric = tensor_values(pc.ricci);
      const Tensor<S> sch = tensor_values(pc.schouten);
      for (std::size_t k = 0; k < ric.size(); ++k) {
        if (!negligible(S(ric.at_flat(k) - sch.at_flat(k)), bound)) fail("P = Ric violated, " + where<S>(f, p));
      }
      ++n;
    }
  }
  return count_text(n, "points");
}

// 5. Cotton symmetries and div P = d tr P on random metrics
template <class S>
std::string symmetry_criterion(const std::vector<Fixture>& fixtures) {
  std::size_t n = 0;
  for (const auto& f : fixtures) {
    const auto chart = MetricChart<S>::from_polynomials(f.metric);
    for (const auto& rp : f.points) {
      const auto p = to_scalars<S>(rp);
      const PointCurvature<S> pc = curvature_at<S>(chart, p, 3);
      const double bound = kFloatSymmetry * std::max(1.0, max_abs_of(tensor_values(pc.nabla_schouten)));
      const auto d = cotton_symmetry_defects(pc);
      if (!negligible(d.antisymmetry, bound)) fail("(i) C_ijk + C_jik = 0 violated, " + where<S>(f, p));
      if (!negligible(d.cyclic, bound)) fail("(ii) cyclic sum C_ijk + C_jki + C_kij = 0 violated, " + where<S>(f, p));
      if (!negligible(d.trace, bound)) fail("(iii) trace g^ik C_ijk = 0 violated, " + where<S>(f, p));
      const S div = div_schouten_defect(pc);
      if (!negligible(div, bound)) {
        fail("div P = d(tr P) violated: defect " + scalar_text(div) + ", " + where<S>(f, p));
      }
      ++n;
    }
  }
  return count_text(fixtures.size(), "metrics") + ", " + count_text(n, "points");
}

// 6. W = 0 in dimension 3, W != 0 for a generic 4-metric
template <class S>
std::string weyl_criterion(const std::vector<Fixture>& models, const std::vector<Fixture>& randoms,
                           const AcceptanceOptions& opts) {
  std::size_t n = 0;
  for (const auto* set : {&models, &randoms}) {
    for (const auto& f : *set) {
      const auto chart = MetricChart<S>::from_polynomials(f.metric);
      for (const auto& rp : f.points) {
        const auto p = to_scalars<S>(rp);
        const PointCurvature<S> pc = curvature_at<S>(chart, p, 3);
        const Tensor<S> w = tensor_values(weyl(pc.metric, pc.riemann, pc.schouten));
        const double bound = kFloatZero * std::max(1.0, max_abs_of(tensor_values(pc.riemann)));
        for (const auto& v : w.data()) {
          if (!negligible(v, bound)) fail("W = 0 violated in dimension 3: component " + scalar_text(v) + ", " +
                                          where<S>(f, p));
        }
        ++n;
      }
    }
  }
  Rng rng(opts.seed + 4);
  const PolynomialMetric m4 = random_polynomial_metric(rng, {"w", "x", "y", "z"}, {1, 1, 1, -1}, 2, 3, 0.5);
  const auto chart = MetricChart<S>::from_polynomials(m4);
  const auto pts = sample_nondegenerate_points(MetricChart<Rational>::from_polynomials(m4), rng, 5);
  std::size_t witnesses = 0;
  for (const auto& rp : pts) {
    const auto p = to_scalars<S>(rp);
    const PointCurvature<S> pc = curvature_at<S>(chart, p, 3);
    const Tensor<S> w = tensor_values(weyl(pc.metric, pc.riemann, pc.schouten));
    if (max_abs_of(w) > kFloatZero * std::max(1.0, max_abs_of(tensor_values(pc.riemann)))) ++witnesses;
  }
  if (witnesses == 0) fail("generic 4-metric: W vanished at every sampled point");
  return count_text(n, "3-dimensional points with W = 0") + "; 4-metric W != 0 at " + std::to_string(witnesses) +
         "/" + std::to_string(pts.size());
}

template <class S>
InnerProduct3<S> inner_product_of(const PseudoEuclidean3& pe) {
  return InnerProduct3<S>(pe.gram.map([](const Rational& x) { return scalar_from<S>(x); }));
}

template <class S>
Vec3<S> vec_of(const Vec3<Rational>& v) {
  return {scalar_from<S>(v[0]), scalar_from<S>(v[1]), scalar_from<S>(v[2])};
}

template <class S>
Array27<S> array_of(const Array27<Rational>& t) {
  Array27<S> out{};
  for (std::size_t k = 0; k < 27; ++k) out[k] = scalar_from<S>(t[k]);
  return out;
}

double gram_scale(const PseudoEuclidean3& pe) {
  double s = 1.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) s = std::max(s, std::abs(pe.gram(i, j).to_double()));
  }
  return s;
}

// 7. Kernel vectors of nonzero Cotton-like tensors are null; a unit kernel
// vector forces T = 0.
template <class S>
std::string null_kernel_criterion(const AcceptanceOptions& opts) {
  std::ostringstream summary;
  for (std::size_t q : {1u, 2u}) {
    Rng rng(opts.seed + 70 + q);
    const PseudoEuclidean3 pe = random_pseudo_euclidean(rng, q);
    const InnerProduct3<Rational> ip_exact(pe.gram);
    const InnerProduct3<S> ip = inner_product_of<S>(pe);
    const auto basis = cotton_like_space_basis(ip_exact);
    if (basis.size() != 5) fail("Cotton-like space has dimension " + std::to_string(basis.size()) + ", expected 5");
    std::uniform_int_distribution<long> coef(-5, 5);
    std::size_t nontrivial = 0;
    for (std::size_t k = 0; k < kTensorsPerSignature; ++k) {
      Array27<Rational> t{};
      if (k % 2 == 0) {
        for (const auto& b : basis) {
          const Rational c(coef(rng));
          for (std::size_t i = 0; i < 27; ++i) t[i] += c * b[i];
        }
      } else {
        const Vec3<Rational> n = pe.from_standard(mat_vec(random_isometry(rng, pe.eta), random_standard_null(rng, q)));
        const auto ann = cotton_like_annihilating(ip_exact, n);
        for (const auto& b : ann) {
          const Rational c(coef(rng));
          for (std::size_t i = 0; i < 27; ++i) t[i] += c * b[i];
        }
      }
      if (opts.fault == "tensor-symmetry" && k == 1) t[idx27(0, 1, 2)] += Rational(1);
      const Array27<S> ts = array_of<S>(t);
      std::optional<CottonLike<S>> held;
      try {
        held.emplace(ts, ip, is_exact_v<S> ? 1e-10 : kFloatSymmetry);
      } catch (const NotCottonLike& e) {
        fail(std::string("generated tensor rejected: ") + e.what());
      }
      const CottonLike<S>& cl = *held;
      if (cl.is_zero()) continue;
      const Subspace<S> ker = kernel(cl, ip);
      if (ker.dim() > 0) ++nontrivial;
      for (const auto& w : ker.basis) {
        const S norm = ip(w, w);
        double wsq = 0.0;
        for (const auto& x : w) wsq += to_double(x) * to_double(x);
        if (!negligible(norm, kFloatNull * std::max(1.0, wsq * gram_scale(pe)))) {
          fail("kernel of a nonzero Cotton-like tensor contains a non-null vector (<w,w> = " + scalar_text(norm) +
               "), q = " + std::to_string(q));
        }
      }
    }
    std::size_t unit_checked = 0;
    for (std::size_t k = 0; k < kUnitVectorsPerSignature; ++k) {
      Vec3<Rational> e{};
      e[k % 3] = Rational(1);
      const Vec3<Rational> w = pe.from_standard(mat_vec(random_isometry(rng, pe.eta), e));
      if (ip_exact(w, w).abs() != Rational(1)) fail("unit vector generator produced a non-unit vector");
      const auto ann = cotton_like_annihilating(ip, vec_of<S>(w));
      if (!ann.empty()) {
        fail("a unit vector annihilates a nonzero Cotton-like tensor (" + std::to_string(ann.size()) +
             "-dimensional solution space), q = " + std::to_string(q));
      }
      ++unit_checked;
    }
    summary << "q=" << q << ": " << nontrivial << " of " << kTensorsPerSignature << " tensors with null kernel, "
            << unit_checked << " unit vectors force T = 0; ";
  }
  std::string s = summary.str();
  return s.substr(0, s.size() - 2);
}

// 8. decompose(reconstruct(u, v)) recovers u up to sign
std::string round_trip_criterion(const AcceptanceOptions& opts) {
  std::ostringstream summary;
  double worst = 0.0;
  for (std::size_t q : {1u, 2u}) {
    Rng rng(opts.seed + 80 + q);
    const PseudoEuclidean3 pe = random_pseudo_euclidean(rng, q);
    const InnerProduct3<Rational> ip(pe.gram);
    const InnerProduct3<double> ipf = inner_product_of<double>(pe);
    const Vec3<Rational> n0 = q == 1 ? Vec3<Rational>{0, 1, 1} : Vec3<Rational>{1, 1, 0};
    const Vec3<Rational> e2 = q == 1 ? Vec3<Rational>{1, 0, 0} : Vec3<Rational>{0, 0, 1};
    std::uniform_int_distribution<long> num(-3, 3);
    std::uniform_int_distribution<long> den(1, 3);
    for (std::size_t k = 0; k < kPairsPerSignature; ++k) {
      const Matrix<Rational> o = random_isometry(rng, pe.eta);
      long ln = 0;
      while (ln == 0) ln = num(rng);
      const Rational lambda(ln, den(rng));
      const Rational mu(num(rng), den(rng));
      Vec3<Rational> u = pe.from_standard(mat_vec(o, n0));
      for (auto& x : u) x *= lambda;
      Vec3<Rational> v = pe.from_standard(mat_vec(o, e2));
      for (std::size_t i = 0; i < 3; ++i) v[i] += mu * u[i];
      if (!ip(u, u).is_zero() || !ip(u, v).is_zero() || ip(v, v).abs() != Rational(1)) {
        fail("pair generator produced a non-null u or non-unit v");
      }
      const Array27<Rational> t = reconstruct(u, v, ip);

      if (opts.exact) {
        const CottonDecomposition<Rational> d = decompose(CottonLike<Rational>(t, ip), ip);
        if (d.kind != DecompositionKind::RankOneKernel) {
          fail("decompose returned " + to_string(d.kind) + " for a reconstructed tensor, q = " + std::to_string(q));
        }
        if (!d.certificate_residual.is_zero()) {
          fail("exact certificate residual " + d.certificate_residual.to_string() + ", q = " + std::to_string(q));
        }
        const Vec3<Rational>& e1 = d.frame->e1;
        std::size_t pivot = 0;
        while (e1[pivot].is_zero()) ++pivot;
        const Rational m = u[pivot] / e1[pivot];
        for (std::size_t i = 0; i < 3; ++i) {
          if (u[i] != m * e1[i]) fail("kernel generator is not proportional to u, q = " + std::to_string(q));
        }
        // u = m e1 is recovered up to sign iff m^2 = |a|, i.e. m^4 |c| = a_u^2.
        if (m * m * m * m * d.frame->e2_norm_sq.abs() != d.a_unnormalized * d.a_unnormalized) {
          fail("u is not recovered up to sign (scale mismatch), q = " + std::to_string(q));
        }
      }

      const CottonDecomposition<double> df = decompose(CottonLike<double>(array_of<double>(t), ipf), ipf);
      if (df.kind != DecompositionKind::RankOneKernel) {
        fail("float decompose returned " + to_string(df.kind) + ", q = " + std::to_string(q));
      }
      worst = std::max(worst, df.residual);
      if (!(df.residual <= kRoundTrip)) {
        fail("float reconstruction residual " + shortest(df.residual) + " > 1e-12, q = " + std::to_string(q));
      }
      double plus = 0.0;
      double minus = 0.0;
      double size = 0.0;
      for (std::size_t i = 0; i < 3; ++i) {
        plus = std::max(plus, std::abs(df.u[i] - u[i].to_double()));
        minus = std::max(minus, std::abs(df.u[i] + u[i].to_double()));
        size = std::max(size, std::abs(u[i].to_double()));
      }
      if (std::min(plus, minus) > 1e-9 * std::max(1.0, size)) {
        fail("float u differs from +-u by " + shortest(std::min(plus, minus)) + ", q = " + std::to_string(q));
      }
    }
    summary << "q=" << q << ": " << kPairsPerSignature << " pairs; ";
  }
  return summary.str() + (opts.exact ? "exact certificates 0, " : "") + "max float residual " + shortest(worst);
}

// 9. ker C = span{d_s} and image(Ric) in it
template <class S>
std::string distribution_criterion(const std::vector<Fixture>& fixtures) {
  std::size_t n = 0;
  for (const auto& f : fixtures) {
    const auto chart = MetricChart<S>::from_polynomials(f.metric);
    for (const auto& rp : f.points) {
      const auto p = to_scalars<S>(rp);
      const Subspace<S> d = distribution_D_at<S>(chart, p, kFloatZero);
      if (d.dim() != 1) fail("D has dimension " + std::to_string(d.dim()) + ", " + where<S>(f, p));
      const auto& b = d.basis[0];
      if (!negligible(b[0], kFloatZero) || !negligible(b[2], kFloatZero) || is_zero(b[1])) {
        fail("D is not span{d_s}: generator (" + scalar_text(b[0]) + ", " + scalar_text(b[1]) + ", " +
             scalar_text(b[2]) + "), " + where<S>(f, p));
      }
      if (!ricci_image_in_D_check<S>(chart, p, kFloatZero)) fail("image of Ric not in D, " + where<S>(f, p));
      ++n;
    }
  }
  return count_text(n, "points");
}

// 10. C = (u ^ grad f) (x) u for u = lambda d_s
template <class S>
std::string gradient_criterion(const std::vector<Fixture>& fixtures) {
  std::size_t n = 0;
  for (const auto& f : fixtures) {
    const auto chart = MetricChart<S>::from_polynomials(f.metric);
    for (const auto& rp : f.points) {
      const auto p = to_scalars<S>(rp);
      for (long lambda : {1L, 2L, -3L}) {
        const std::vector<S> u{S{0}, S(lambda), S{0}};
        const auto g = verify_gradient_identity_at<S>(chart, p, u, kFloatZero);
        if (!g.holds) {
          fail("C = (u ^ grad f)(x)u violated for u = " + std::to_string(lambda) + " d_s: " +
               (g.note.empty() ? "residual " + scalar_text(g.residual) : g.note) + ", " + where<S>(f, p));
        }
        ++n;
      }
    }
  }
  return count_text(n, "(point, lambda) cases");
}

// 11. float Cotton agrees with exact Cotton
std::string agreement_criterion(const std::vector<Fixture>& fixtures) {
  double worst = 0.0;
  std::size_t n = 0;
  for (const auto& f : fixtures) {
    const auto ce = MetricChart<Rational>::from_polynomials(f.metric);
    const auto cf = MetricChart<double>::from_polynomials(f.metric);
    for (const auto& rp : f.points) {
      const auto pf = to_scalars<double>(rp);
      const Tensor<Rational> exact = tensor_values(cotton_at<Rational>(ce, rp, 3));
      const Tensor<double> approx = tensor_values(cotton_at<double>(cf, pf, 3));
      const double scale = std::max(1.0, max_abs_of(exact));
      for (std::size_t k = 0; k < exact.size(); ++k) {
        const double rel = std::abs(approx.at_flat(k) - exact.at_flat(k).to_double()) / scale;
        worst = std::max(worst, rel);
        if (!(rel <= kModeAgreement)) {
          fail("float Cotton differs from exact by " + shortest(rel) + " (relative), " + where<double>(f, pf));
        }
      }
      ++n;
    }
  }
  return count_text(n, "points") + ", max relative difference " + shortest(worst);
}

// 12. CLI exit-code contract
std::string cli_criterion(const AcceptanceOptions& opts) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("cotton-selftest-" + std::to_string(opts.seed) + "-" +
                                                    std::to_string(std::chrono::steady_clock::now()
                                                                       .time_since_epoch()
                                                                       .count()));
  fs::create_directories(dir);
  struct Cleanup {
    fs::path dir;
    ~Cleanup() {
      std::error_code ec;
      fs::remove_all(dir, ec);
    }
  } cleanup{dir};
  auto write = [&](const std::string& name, const std::string& body) {
    const fs::path path = dir / name;
    std::ofstream(path) << body;
    return path.string();
  };
  const std::string corrupt = write("corrupt.metric", "dim: 3\ncoords: [t, s, x]\ncomponents:\n  t,t: x^^3 +\n");
  const std::string bad_tensor = write("bad.tensor",
                                       "inner_product:\n  - [1, 0, 0]\n  - [0, 1, 0]\n  - [0, 0, -1]\n"
                                       "tensor:\n  \"1,1,1\": 1\n");

  std::ostringstream out;
  std::ostringstream err;
  const int vm = run_cli({"verify-model", "--a", "0"}, out, err);
  if (vm != kExitOk) fail("verify-model --a \"0\" exited " + std::to_string(vm) + ": " + err.str());
  std::size_t pass_lines = 0;
  std::istringstream lines(out.str());
  for (std::string line; std::getline(lines, line);) pass_lines += line.rfind("PASS", 0) == 0 ? 1 : 0;
  if (pass_lines != 7) fail("verify-model printed " + std::to_string(pass_lines) + " PASS lines, expected 7");

  std::ostringstream o2;
  std::ostringstream e2;
  const int bad_metric = run_cli({"curvature", corrupt, "--at", "t=0,s=0,x=2"}, o2, e2);
  if (bad_metric != kExitInputError) fail("corrupt metric file exited " + std::to_string(bad_metric) + ", expected 2");

  std::ostringstream o3;
  std::ostringstream e3;
  const int bad_dec = run_cli({"decompose", bad_tensor}, o3, e3);
  if (bad_dec != kExitPrecondition) fail("non-Cotton-like tensor exited " + std::to_string(bad_dec) + ", expected 3");
  if (o3.str().find("antisymmetry") == std::string::npos) fail("decompose did not name the violated identity");

  std::ostringstream o4;
  std::ostringstream e4;
  run_cli({"verify-model", "--a", "t^2 - 1", "--report", "json"}, o4, e4);
  if (dump_json(Json::parse(o4.str())) != o4.str()) fail("JSON report does not round-trip byte for byte");
  return "exit codes 0 / 2 / 3 as required, 7 PASS lines, JSON round-trips";
}

}  // namespace

const std::vector<std::string>& acceptance_faults() {
  static const std::vector<std::string> faults{"model-metric", "tensor-symmetry"};
  return faults;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> results;
  std::vector<Fixture> models;
  std::vector<Fixture> randoms;
  auto models_ref = [&]() -> const std::vector<Fixture>& {
    if (models.empty()) models = model_fixtures(opts);
    return models;
  };
  auto randoms_ref = [&]() -> const std::vector<Fixture>& {
    if (randoms.empty()) randoms = random_metric_fixtures(opts);
    return randoms;
  };

  auto run = [&](int id, const std::string& name, const std::function<std::string()>& body) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      r.detail = body();
      r.passed = true;
    } catch (const Failure& f) {
      r.detail = f.message;
    } catch (const std::exception& e) {
      r.detail = std::string("unexpected error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(r);
    if (on_result) on_result(r);
  };

  const bool exact = opts.exact;
  run(1, "Model Ricci reproduction", [&] {
    const auto start = std::chrono::steady_clock::now();
    const auto& fx = model_fixtures(opts);
    std::string d = exact ? ricci_criterion<Rational>(fx) : ricci_criterion<double>(fx);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= kRicciBudgetSeconds) fail("took " + shortest(secs) + " s, budget is 5 s");
    models = fx;
    return d;
  });
  run(2, "Model Cotton reproduction", [&] {
    return exact ? cotton_criterion<Rational>(models_ref()) : cotton_criterion<double>(models_ref());
  });
  run(3, "Parallel Cotton tensor", [&] {
    return exact ? parallel_criterion<Rational>(models_ref(), opts) : parallel_criterion<double>(models_ref(), opts);
  });
  run(4, "Scalar-flat, P = Ric", [&] {
    return exact ? scalar_flat_criterion<Rational>(models_ref()) : scalar_flat_criterion<double>(models_ref());
  });
  run(5, "Cotton symmetry suite", [&] {
    return exact ? symmetry_criterion<Rational>(randoms_ref()) : symmetry_criterion<double>(randoms_ref());
  });
  run(6, "Weyl vanishing in dimension 3", [&] {
    return exact ? weyl_criterion<Rational>(models_ref(), randoms_ref(), opts)
                 : weyl_criterion<double>(models_ref(), randoms_ref(), opts);
  });
  run(7, "Kernels consist of null vectors", [&] {
    return exact ? null_kernel_criterion<Rational>(opts) : null_kernel_criterion<double>(opts);
  });
  run(8, "Decomposition round trip", [&] { return round_trip_criterion(opts); });
  run(9, "Distribution and Ricci image", [&] {
    return exact ? distribution_criterion<Rational>(models_ref()) : distribution_criterion<double>(models_ref());
  });
  run(10, "Gradient identity", [&] {
    return exact ? gradient_criterion<Rational>(models_ref()) : gradient_criterion<double>(models_ref());
  });
  run(11, "Exact/float agreement", [&] { return agreement_criterion(models_ref()); });
  run(12, "CLI contract", [&] { return cli_criterion(opts); });
  return results;
}

std::string format_result_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "[PASS] " : "[FAIL] ") << std::setw(2) << r.id << "  " << r.name << "  (" << std::fixed
     << std::setprecision(2) << r.seconds << " s)  " << r.detail;
  return os.str();
}

}  // namespace cotton::app
