#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cotton/linalg.hpp"
#include "cotton/rational.hpp"

namespace cotton {

template <class S>
using Vec3 = std::array<S, 3>;

/// Components T_ijk of a rank-3 covariant tensor on a 3-dimensional space,
/// stored at 9 i + 3 j + k.
template <class S>
using Array27 = std::array<S, 27>;

constexpr std::size_t idx27(std::size_t i, std::size_t j, std::size_t k) { return 9 * i + 3 * j + k; }

/// Nondegenerate symmetric bilinear form on a 3-dimensional space.
template <class S>
class InnerProduct3 {
 public:
  explicit InnerProduct3(Matrix<S> gram);
  static InnerProduct3 diagonal(const S& a, const S& b, const S& c);

  const Matrix<S>& gram() const { return gram_; }
  const Matrix<S>& inverse() const { return inverse_; }
  /// Number of negative squares.
  std::size_t index() const { return index_; }

  S operator()(const Vec3<S>& x, const Vec3<S>& y) const;
  Vec3<S> lower(const Vec3<S>& x) const;
  Vec3<S> raise(const Vec3<S>& covector) const;

 private:
  Matrix<S> gram_;
  Matrix<S> inverse_;
  std::size_t index_ = 0;
};

struct SymmetryReport {
  bool ok = true;
  /// Empty when ok; otherwise names the first violated identity.
  std::string violation;
  std::array<std::size_t, 3> where{};
  double defect = 0.0;
};

/// Checks (i) T_ijk + T_jik = 0, (ii) T_ijk + T_jki + T_kij = 0 and
/// (iii) g^ik T_ijk = 0 (trace over the first and third slots). Float mode
/// accepts defects up to tolerance * max(1, max |T|).
template <class S>
SymmetryReport check_cotton_like(const Array27<S>& t, const InnerProduct3<S>& ip, double tolerance = 1e-10);

/// A tensor known to satisfy the Cotton symmetries for some inner product.
template <class S>
class CottonLike {
 public:
  /// Throws NotCottonLike naming the violated identity.
  CottonLike(const Array27<S>& components, const InnerProduct3<S>& ip, double tolerance = 1e-10);

  const Array27<S>& components() const { return components_; }
  const S& operator()(std::size_t i, std::size_t j, std::size_t k) const { return components_[idx27(i, j, k)]; }
  bool is_zero() const;

 private:
  Array27<S> components_;
};

template <class S>
struct Subspace {
  std::vector<Vec3<S>> basis;
  std::size_t dim() const { return basis.size(); }
};

/// {u : u^i T_ijk = 0}. Exact null space for Rational, singular-value
/// thresholding (relative 1e-8) for double. A basis vector of a
/// one-dimensional kernel is scaled so its first nonzero entry is 1 (exact)
/// or so it has unit Euclidean length with a positive first entry (float).
/// Throws InconsistentKernelDim for a nonzero tensor with a 2- or
/// 3-dimensional kernel.
template <class S>
Subspace<S> kernel(const CottonLike<S>& t, const InnerProduct3<S>& ip);

enum class CausalCharacter { Spacelike, Null, Timelike };

std::string to_string(CausalCharacter c);

/// Sign of <w, w>: positive is spacelike, negative timelike.
template <class S>
CausalCharacter causal_character(const Vec3<S>& w, const InnerProduct3<S>& ip, double tolerance = 1e-10);

/// Basis (e1, e2, e3) with <e1,e2> = <e2,e3> = <e3,e3> = 0 and
/// <e1,e3> = <e2,e2> = epsilon = (-1)^(q+1). e1, e3 and the unnormalized e2
/// are exact in exact mode; normalizing e2 takes a square root, so the
/// normalized frame is given in doubles.
template <class S>
struct NullFrame {
  Vec3<S> e1;
  Vec3<S> e2_unnormalized;
  Vec3<S> e3;
  /// <e2_unnormalized, e2_unnormalized>; its sign is epsilon.
  S e2_norm_sq;
  int epsilon = 1;
  /// Rows e1, e2 (normalized), e3.
  std::array<std::array<double, 3>, 3> normalized{};

  /// Gram matrix of (e1, e2_unnormalized, e3): the exact certificate.
  Matrix<S> gram(const InnerProduct3<S>& ip) const;
};

/// Completes a null vector to a null frame. e1 is kept as given. Throws
/// NotNull for a zero or non-null e1, PreconditionError for definite forms.
template <class S>
NullFrame<S> null_frame(const InnerProduct3<S>& ip, const Vec3<S>& e1, double tolerance = 1e-10);

/// T(f_a, f_b, f_c) for the frame f = (e1, e2_unnormalized, e3).
template <class S>
Array27<S> frame_components(const Array27<S>& t, const NullFrame<S>& frame);

enum class DecompositionKind { ZeroTensor, TrivialKernel, RankOneKernel };

std::string to_string(DecompositionKind k);

template <class S>
struct CottonDecomposition {
  DecompositionKind kind = DecompositionKind::ZeroTensor;
  Subspace<S> kernel;

  // RankOneKernel only. T = (u ^ v) (x) u with u = sqrt|a| e1 and
  // v = sgn(a epsilon) e2, where a = T(e3, e2, e3) in the normalized frame.
  std::optional<NullFrame<S>> frame;
  /// T(e3, e2_unnormalized, e3).
  S a_unnormalized{0};
  /// Exact certificate: T = coefficient (e1 ^ e2_unnormalized) (x) e1 with
  /// both vectors lowered; coefficient = a_unnormalized / e2_norm_sq.
  S coefficient{0};
  /// Max-abs defect of the certificate reconstruction (0 exactly in exact mode).
  S certificate_residual{0};

  std::array<double, 3> u{};
  std::array<double, 3> v{};
  double a = 0.0;
  /// Max-abs defect of (u ^ v) (x) u against the input, in doubles.
  double residual = 0.0;
};

/// Pointwise classification of a Cotton-like tensor. Verifies, as internal
/// assertions, that in the null frame only the (2,3)-type components survive
/// and T(e2, e3, e2) = 0; violations raise FrameAssertion.
template <class S>
CottonDecomposition<S> decompose(const CottonLike<S>& t, const InnerProduct3<S>& ip, double tolerance = 1e-10);

/// (u ^ v) (x) u with vectors lowered by ip:
/// C_ijk = (u_i v_j - v_i u_j) u_k.
template <class S>
Array27<S> reconstruct(const Vec3<S>& u, const Vec3<S>& v, const InnerProduct3<S>& ip);

/// Basis of the space of Cotton-like tensors for ip inside the 27
/// dimensional space of all rank-3 tensors.
template <class S>
std::vector<Array27<S>> cotton_like_space_basis(const InnerProduct3<S>& ip);

/// Basis of the Cotton-like tensors T with T(w, ., .) = 0.
template <class S>
std::vector<Array27<S>> cotton_like_annihilating(const InnerProduct3<S>& ip, const Vec3<S>& w);

template <class S>
S max_abs(const Array27<S>& t);

template <class S>
Array27<S> subtract(const Array27<S>& a, const Array27<S>& b);

}  // namespace cotton
