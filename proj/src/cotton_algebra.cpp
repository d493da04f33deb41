#include "cotton/cotton_algebra.hpp"

#include <algorithm>
#include <cmath>

#include "cotton/chart.hpp"
#include "cotton/errors.hpp"

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
Vec3<S> cross(const Vec3<S>& a, const Vec3<S>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class S>
Vec3<S> scaled(const Vec3<S>& x, const S& c) {
  return {x[0] * c, x[1] * c, x[2] * c};
}

template <class S>
std::array<double, 3> as_double(const Vec3<S>& x) {
  return {to_double(x[0]), to_double(x[1]), to_double(x[2])};
}

template <class S>
double max_abs_double(const Vec3<S>& x) {
  return std::max({std::abs(to_double(x[0])), std::abs(to_double(x[1])), std::abs(to_double(x[2]))});
}

/// Appends the linear constraints (i), (ii), (iii) as rows over the 27 unknowns.
template <class S>
void cotton_constraints(const InnerProduct3<S>& ip, std::vector<std::vector<S>>& rows) {
  const auto blank = [] { return std::vector<S>(27, S{0}); };
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k < 3; ++k) {
        auto antisym = blank();
        antisym[idx27(i, j, k)] = antisym[idx27(i, j, k)] + S{1};
        antisym[idx27(j, i, k)] = antisym[idx27(j, i, k)] + S{1};
        rows.push_back(std::move(antisym));
        auto cyclic = blank();
        cyclic[idx27(i, j, k)] = cyclic[idx27(i, j, k)] + S{1};
        cyclic[idx27(j, k, i)] = cyclic[idx27(j, k, i)] + S{1};
        cyclic[idx27(k, i, j)] = cyclic[idx27(k, i, j)] + S{1};
        rows.push_back(std::move(cyclic));
      }
    }
  }
  for (std::size_t j = 0; j < 3; ++j) {
    auto trace = blank();
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t k = 0; k < 3; ++k) trace[idx27(i, j, k)] = ip.inverse()(i, k);
    }
    rows.push_back(std::move(trace));
  }
}

template <class S>
std::vector<Array27<S>> solve_constraints(const std::vector<std::vector<S>>& rows) {
  Matrix<S> m(rows.size(), 27, S{0});
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < 27; ++c) m(r, c) = rows[r][c];
  }
  std::vector<Array27<S>> out;
  for (const auto& v : nullspace(m)) {
    Array27<S> t;
    std::copy(v.begin(), v.end(), t.begin());
    out.push_back(t);
  }
  return out;
}

}  // namespace

template <class S>
InnerProduct3<S>::InnerProduct3(Matrix<S> gram) : gram_(std::move(gram)) {
  if (gram_.rows() != 3 || gram_.cols() != 3) throw ArityMismatch("inner product must be 3x3");
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (!(gram_(i, j) == gram_(j, i))) throw PreconditionError("inner product matrix is not symmetric");
    }
  }
  const Signature sig = inertia(gram_);
  if (sig.zeros != 0) throw PreconditionError("inner product is degenerate");
  index_ = sig.negatives;
  const S det = determinant(gram_);
  inverse_ = adjugate(gram_).map([&](const S& x) { return x / det; });
}

template <class S>
InnerProduct3<S> InnerProduct3<S>::diagonal(const S& a, const S& b, const S& c) {
  Matrix<S> m(3, 3, S{0});
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return InnerProduct3(std::move(m));
}

template <class S>
S InnerProduct3<S>::operator()(const Vec3<S>& x, const Vec3<S>& y) const {
  S acc{0};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) acc = acc + gram_(i, j) * x[i] * y[j];
  }
  return acc;
}

template <class S>
Vec3<S> InnerProduct3<S>::lower(const Vec3<S>& x) const {
  Vec3<S> out{S{0}, S{0}, S{0}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) out[i] = out[i] + gram_(i, j) * x[j];
  }
  return out;
}

template <class S>
Vec3<S> InnerProduct3<S>::raise(const Vec3<S>& covector) const {
  Vec3<S> out{S{0}, S{0}, S{0}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) out[i] = out[i] + inverse_(i, j) * covector[j];
  }
  return out;
}

template <class S>
S max_abs(const Array27<S>& t) {
  S best{0};
  for (const auto& x : t) best = std::max(best, abs_value(x));
  return best;
}

template <class S>
Array27<S> subtract(const Array27<S>& a, const Array27<S>& b) {
  Array27<S> out;
  for (std::size_t i = 0; i < 27; ++i) out[i] = a[i] - b[i];
  return out;
}

template <class S>
SymmetryReport check_cotton_like(const Array27<S>& t, const InnerProduct3<S>& ip, double tolerance) {
  const double bound = tolerance * std::max(1.0, to_double(max_abs(t)));
  const auto fail = [](const char* what, std::size_t i, std::size_t j, std::size_t k, const S& d) {
    return SymmetryReport{false, what, {i, j, k}, std::abs(to_double(d))};
  };
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k < 3; ++k) {
        const S d = t[idx27(i, j, k)] + t[idx27(j, i, k)];
        if (!negligible(d, bound)) return fail("(i) antisymmetry C_ijk + C_jik = 0", i, j, k, d);
      }
    }
  }
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k < 3; ++k) {
        const S d = t[idx27(i, j, k)] + t[idx27(j, k, i)] + t[idx27(k, i, j)];
        if (!negligible(d, bound)) return fail("(ii) cyclic identity C_ijk + C_jki + C_kij = 0", i, j, k, d);
      }
    }
  }
  for (std::size_t j = 0; j < 3; ++j) {
    S d{0};
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t k = 0; k < 3; ++k) d = d + ip.inverse()(i, k) * t[idx27(i, j, k)];
    }
    if (!negligible(d, bound)) return fail("(iii) trace g^ik C_ijk = 0", 0, j, 0, d);
  }
  return {};
}

template <class S>
CottonLike<S>::CottonLike(const Array27<S>& components, const InnerProduct3<S>& ip, double tolerance)
    : components_(components) {
  const SymmetryReport report = check_cotton_like(components, ip, tolerance);
  if (!report.ok) {
    throw NotCottonLike("tensor is not Cotton-like: violates " + report.violation + " at index (" +
                        std::to_string(report.where[0] + 1) + "," + std::to_string(report.where[1] + 1) + "," +
                        std::to_string(report.where[2] + 1) + ")");
  }
}

template <class S>
bool CottonLike<S>::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const S& x) { return cotton::is_zero(x); });
}

template <class S>
Subspace<S> kernel(const CottonLike<S>& t, const InnerProduct3<S>& ip) {
  (void)ip;
  Subspace<S> out;
  if (t.is_zero()) {
    for (std::size_t i = 0; i < 3; ++i) {
      Vec3<S> e{S{0}, S{0}, S{0}};
      e[i] = S{1};
      out.basis.push_back(e);
    }
    return out;
  }
  // Row (j, k), column i: u^i T_ijk = 0.
  Matrix<S> a(9, 3, S{0});
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t k = 0; k < 3; ++k) {
      for (std::size_t i = 0; i < 3; ++i) a(3 * j + k, i) = t(i, j, k);
    }
  }
  for (const auto& v : nullspace(a)) out.basis.push_back({v[0], v[1], v[2]});
  if (out.dim() >= 2) {
    throw InconsistentKernelDim("nonzero Cotton-like tensor with a " + std::to_string(out.dim()) +
                                "-dimensional kernel");
  }
  if (out.dim() == 1) {
    Vec3<S>& u = out.basis[0];
    if constexpr (is_exact_v<S>) {
      const auto first = std::find_if(u.begin(), u.end(), [](const S& x) { return !x.is_zero(); });
      const S inv = S{1} / *first;
      u = scaled(u, inv);
    } else {
      const double norm = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
      const auto first = std::find_if(u.begin(), u.end(), [&](double x) { return std::abs(x) > 1e-12 * norm; });
      u = scaled(u, (*first < 0 ? -1.0 : 1.0) / norm);
    }
  }
  return out;
}

std::string to_string(CausalCharacter c) {
  switch (c) {
    case CausalCharacter::Spacelike: return "spacelike";
    case CausalCharacter::Null: return "null";
    case CausalCharacter::Timelike: return "timelike";
  }
  return "?";
}

std::string to_string(DecompositionKind k) {
  switch (k) {
    case DecompositionKind::ZeroTensor: return "ZeroTensor";
    case DecompositionKind::TrivialKernel: return "TrivialKernel";
    case DecompositionKind::RankOneKernel: return "RankOneKernel";
  }
  return "?";
}

template <class S>
CausalCharacter causal_character(const Vec3<S>& w, const InnerProduct3<S>& ip, double tolerance) {
  const S n = ip(w, w);
  double scale = 0.0;
  if constexpr (!is_exact_v<S>) {
    double g = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) g = std::max(g, std::abs(ip.gram()(i, j)));
    }
    scale = g * max_abs_double(w) * max_abs_double(w);
  }
  if (negligible(n, tolerance * scale)) return CausalCharacter::Null;
  return sign_of(n) > 0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;
}

template <class S>
Matrix<S> NullFrame<S>::gram(const InnerProduct3<S>& ip) const {
  const std::array<const Vec3<S>*, 3> f{&e1, &e2_unnormalized, &e3};
  Matrix<S> m(3, 3, S{0});
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) m(a, b) = ip(*f[a], *f[b]);
  }
  return m;
}

template <class S>
NullFrame<S> null_frame(const InnerProduct3<S>& ip, const Vec3<S>& e1, double tolerance) {
  if (std::all_of(e1.begin(), e1.end(), [](const S& x) { return is_zero(x); })) {
    throw NotNull("e1 is the zero vector");
  }
  if (causal_character(e1, ip, tolerance) != CausalCharacter::Null) throw NotNull("e1 is not a null vector");
  const std::size_t q = ip.index();
  if (q != 1 && q != 2) throw PreconditionError("null frames need an indefinite inner product (index 1 or 2)");

  // A coordinate vector w pairing nontrivially with e1; the largest pairing
  // for conditioning (exact mode takes the first nonzero one).
  const Vec3<S> lowered = ip.lower(e1);
  std::size_t pick = 0;
  if constexpr (is_exact_v<S>) {
    while (lowered[pick].is_zero()) ++pick;
  } else {
    for (std::size_t i = 1; i < 3; ++i) {
      if (std::abs(lowered[i]) > std::abs(lowered[pick])) pick = i;
    }
  }
  Vec3<S> w{S{0}, S{0}, S{0}};
  w[pick] = S{1};
  const S p = lowered[pick];

  // e3 := w / p - (<w,w> / (2 p^2)) e1 is null with <e1, e3> = 1.
  NullFrame<S> frame;
  frame.e1 = e1;
  const S c3 = ip(w, w) / (S{2} * p * p);
  for (std::size_t i = 0; i < 3; ++i) frame.e3[i] = w[i] / p - c3 * e1[i];

  // Annihilated by both lowered vectors, hence orthogonal to e1 and e3.
  frame.e2_unnormalized = cross(lowered, ip.lower(frame.e3));
  frame.e2_norm_sq = ip(frame.e2_unnormalized, frame.e2_unnormalized);
  frame.epsilon = q == 1 ? 1 : -1;
  if (sign_of(frame.e2_norm_sq) != frame.epsilon) {
    throw FrameAssertion("orthogonal complement of the null plane has the wrong sign");
  }
  if (frame.epsilon < 0) {
    for (auto& x : frame.e3) x = -x;
  }

  const double inv_norm = 1.0 / std::sqrt(std::abs(to_double(frame.e2_norm_sq)));
  frame.normalized[0] = as_double(frame.e1);
  frame.normalized[1] = as_double(frame.e2_unnormalized);
  for (auto& x : frame.normalized[1]) x *= inv_norm;
  frame.normalized[2] = as_double(frame.e3);
  return frame;
}

template <class S>
Array27<S> frame_components(const Array27<S>& t, const NullFrame<S>& frame) {
  const std::array<const Vec3<S>*, 3> f{&frame.e1, &frame.e2_unnormalized, &frame.e3};
  Array27<S> out;
  out.fill(S{0});
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      for (std::size_t c = 0; c < 3; ++c) {
        S acc{0};
        for (std::size_t i = 0; i < 3; ++i) {
          if (is_zero((*f[a])[i])) continue;
          for (std::size_t j = 0; j < 3; ++j) {
            if (is_zero((*f[b])[j])) continue;
            for (std::size_t k = 0; k < 3; ++k) {
              acc = acc + t[idx27(i, j, k)] * (*f[a])[i] * (*f[b])[j] * (*f[c])[k];
            }
          }
        }
        out[idx27(a, b, c)] = acc;
      }
    }
  }
  return out;
}

template <class S>
Array27<S> reconstruct(const Vec3<S>& u, const Vec3<S>& v, const InnerProduct3<S>& ip) {
  const Vec3<S> ul = ip.lower(u);
  const Vec3<S> vl = ip.lower(v);
  Array27<S> out;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k < 3; ++k) out[idx27(i, j, k)] = (ul[i] * vl[j] - vl[i] * ul[j]) * ul[k];
    }
  }
  return out;
}

template <class S>
CottonDecomposition<S> decompose(const CottonLike<S>& t, const InnerProduct3<S>& ip, double tolerance) {
  CottonDecomposition<S> out;
  if (t.is_zero()) {
    out.kind = DecompositionKind::ZeroTensor;
    out.kernel = kernel(t, ip);
    return out;
  }
  out.kernel = kernel(t, ip);
  if (out.kernel.dim() == 0) {
    out.kind = DecompositionKind::TrivialKernel;
    return out;
  }
  const Vec3<S>& e1 = out.kernel.basis[0];
  const double loose = std::max(tolerance, 1e-8);
  if (causal_character(e1, ip, loose) != CausalCharacter::Null) {
    throw KernelContainsNonNull("nonzero Cotton-like tensor annihilated by a non-null vector");
  }
  out.kind = DecompositionKind::RankOneKernel;
  NullFrame<S> frame = null_frame(ip, e1, loose);

  // In the frame (e1, e2, e3) only F(2,3,2)-type entries survive: with
  // 0-based labels, nonzero entries need {a,b,c} = {1,2} and a != b, and
  // F(1,2,1) vanishes. That leaves a = F(2,1,2) = -F(1,2,2).
  const Array27<S> f = frame_components(t.components(), frame);
  const double scale = to_double(max_abs(f));
  const double bound = loose * scale;
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      for (std::size_t c = 0; c < 3; ++c) {
        const bool essential = a != b && a != 0 && b != 0 && c != 0;
        if (!essential && !negligible(f[idx27(a, b, c)], bound)) {
          throw FrameAssertion("null-frame component (" + std::to_string(a + 1) + "," + std::to_string(b + 1) +
                               "," + std::to_string(c + 1) + ") should vanish");
        }
      }
    }
  }
  if (!negligible(f[idx27(1, 2, 1)], bound)) throw FrameAssertion("null-frame component (2,3,2) should vanish");
  out.a_unnormalized = f[idx27(2, 1, 2)];
  if (negligible(out.a_unnormalized, bound)) throw FrameAssertion("essential component (3,2,3) vanishes");

  out.coefficient = out.a_unnormalized / frame.e2_norm_sq;
  Array27<S> certificate = reconstruct(frame.e1, frame.e2_unnormalized, ip);
  for (auto& x : certificate) x = x * out.coefficient;
  out.certificate_residual = max_abs(subtract(certificate, t.components()));

  const double norm = std::sqrt(std::abs(to_double(frame.e2_norm_sq)));
  out.a = to_double(out.a_unnormalized) / norm;
  const double root = std::sqrt(std::abs(out.a));
  const double v_sign = (out.a * frame.epsilon) < 0 ? -1.0 : 1.0;
  for (std::size_t i = 0; i < 3; ++i) {
    out.u[i] = root * frame.normalized[0][i];
    out.v[i] = v_sign * frame.normalized[1][i];
  }
  const InnerProduct3<double> ipd(ip.gram().map([](const S& x) { return to_double(x); }));
  const Array27<double> rebuilt = reconstruct<double>(out.u, out.v, ipd);
  double worst = 0.0;
  for (std::size_t i = 0; i < 27; ++i) worst = std::max(worst, std::abs(rebuilt[i] - to_double(t.components()[i])));
  out.residual = worst;
  out.frame = std::move(frame);
  return out;
}

template <class S>
std::vector<Array27<S>> cotton_like_space_basis(const InnerProduct3<S>& ip) {
  std::vector<std::vector<S>> rows;
  cotton_constraints(ip, rows);
  return solve_constraints(rows);
}

template <class S>
std::vector<Array27<S>> cotton_like_annihilating(const InnerProduct3<S>& ip, const Vec3<S>& w) {
  std::vector<std::vector<S>> rows;
  cotton_constraints(ip, rows);
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t k = 0; k < 3; ++k) {
      std::vector<S> row(27, S{0});
      for (std::size_t i = 0; i < 3; ++i) row[idx27(i, j, k)] = w[i];
      rows.push_back(std::move(row));
    }
  }
  return solve_constraints(rows);
}

#define COTTON_INSTANTIATE_ALGEBRA(S)                                                                       \
  template class InnerProduct3<S>;                                                                          \
  template class CottonLike<S>;                                                                             \
  template struct NullFrame<S>;                                                                             \
  template SymmetryReport check_cotton_like<S>(const Array27<S>&, const InnerProduct3<S>&, double);         \
  template Subspace<S> kernel<S>(const CottonLike<S>&, const InnerProduct3<S>&);                            \
  template CausalCharacter causal_character<S>(const Vec3<S>&, const InnerProduct3<S>&, double);            \
  template NullFrame<S> null_frame<S>(const InnerProduct3<S>&, const Vec3<S>&, double);                     \
  template Array27<S> frame_components<S>(const Array27<S>&, const NullFrame<S>&);                          \
  template CottonDecomposition<S> decompose<S>(const CottonLike<S>&, const InnerProduct3<S>&, double);      \
  template Array27<S> reconstruct<S>(const Vec3<S>&, const Vec3<S>&, const InnerProduct3<S>&);             \
  template std::vector<Array27<S>> cotton_like_space_basis<S>(const InnerProduct3<S>&);                     \
  template std::vector<Array27<S>> cotton_like_annihilating<S>(const InnerProduct3<S>&, const Vec3<S>&);    \
  template S max_abs<S>(const Array27<S>&);                                                                 \
  template Array27<S> subtract<S>(const Array27<S>&, const Array27<S>&);

COTTON_INSTANTIATE_ALGEBRA(Rational)
COTTON_INSTANTIATE_ALGEBRA(double)

#undef COTTON_INSTANTIATE_ALGEBRA

}  // namespace cotton
