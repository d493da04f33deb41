#include "cotton/curvature.hpp"

#include <algorithm>

namespace cotton {

namespace {

template <class S>
Jet<S> zero_jet(const MetricData<S>& md, int order) {
  return Jet<S>(md.nvars(), order);
}

template <class S>
void accumulate(Jet<S>& acc, const Jet<S>& a, const Jet<S>& b) {
  if (a.is_zero() || b.is_zero()) return;
  acc += a * b;
}

template <class S>
S max_abs_coefficient(const Jet<S>& jet) {
  S best{0};
  for (const auto& c : jet.coefficients()) best = std::max(best, abs_value(c));
  return best;
}

}  // namespace

template <class S>
MetricData<S> metric_data_at(const MetricChart<S>& chart, std::span<const S> point, int order) {
  MetricData<S> md{std::vector<S>(point.begin(), point.end()), metric_jets_at(chart, point, order), {}};
  md.g_inv = inverse_jets(md.g, format_point(point));
  return md;
}

template <class S>
JetTensor<S> christoffel(const MetricData<S>& md) {
  const std::size_t n = md.dim();
  if (md.order() < 1) throw InsufficientJetOrder("Christoffel symbols need metric jets of order >= 1");
  const int order = md.order() - 1;

  // dg(i, j, l) = d_l g_ij
  std::vector<Jet<S>> dg;
  dg.reserve(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) dg.push_back(md.g(i, j).derivative(l));
    }
  }
  const auto d = [&](std::size_t i, std::size_t j, std::size_t l) -> const Jet<S>& {
    return dg[(i * n + j) * n + l];
  };

  // Lowered symbols Gamma_ijl = (d_i g_jl + d_j g_il - d_l g_ij) / 2.
  const S half = S{1} / S{2};
  JetTensor<S> gamma(n, {Slot::Up, Slot::Down, Slot::Down}, zero_jet(md, order));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      std::vector<Jet<S>> lowered;
      lowered.reserve(n);
      for (std::size_t l = 0; l < n; ++l) lowered.push_back((d(j, l, i) + d(i, l, j) - d(i, j, l)) * half);
      for (std::size_t k = 0; k < n; ++k) {
        Jet<S> acc = zero_jet(md, order);
        for (std::size_t l = 0; l < n; ++l) accumulate(acc, md.g_inv(k, l), lowered[l]);
        gamma(k, i, j) = acc;
        gamma(k, j, i) = acc;
      }
    }
  }
  return gamma;
}

template <class S>
JetTensor<S> riemann(const MetricData<S>& md, const JetTensor<S>& gamma) {
  const std::size_t n = md.dim();
  const int order = gamma.at_flat(0).order() - 1;
  if (order < 0) throw InsufficientJetOrder("Riemann tensor needs metric jets of order >= 2");
  const Jet<S> zero = zero_jet(md, order);

  // R^l_ijk = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik
  JetTensor<S> up(n, {Slot::Up, Slot::Down, Slot::Down, Slot::Down}, zero);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          Jet<S> acc = gamma(l, j, k).derivative(i) - gamma(l, i, k).derivative(j);
          for (std::size_t m = 0; m < n; ++m) {
            accumulate(acc, gamma(l, i, m), gamma(m, j, k));
            accumulate(acc, -gamma(l, j, m), gamma(m, i, k));
          }
          up(l, j, i, k) = -acc;
          up(l, i, j, k) = std::move(acc);
        }
      }
    }
  }

  JetTensor<S> down = JetTensor<S>::covariant(n, 4, zero);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          Jet<S> acc = zero;
          for (std::size_t m = 0; m < n; ++m) accumulate(acc, md.g(l, m), up(m, i, j, k));
          down(i, j, k, l) = std::move(acc);
        }
      }
    }
  }
  return down;
}

template <class S>
JetTensor<S> ricci(const JetTensor<S>& gamma) {
  const std::size_t n = gamma.dim();
  const int order = gamma.at_flat(0).order() - 1;
  if (order < 0) throw InsufficientJetOrder("Ricci tensor needs metric jets of order >= 2");
  const Jet<S> zero(n, order);

  // Gamma^i_im, reused in every component.
  std::vector<Jet<S>> trace;
  for (std::size_t m = 0; m < n; ++m) {
    Jet<S> acc = zero;
    for (std::size_t i = 0; i < n; ++i) acc += gamma(i, i, m);
    trace.push_back(std::move(acc));
  }

  JetTensor<S> ric = JetTensor<S>::covariant(n, 2, zero);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j; k < n; ++k) {
      Jet<S> acc = zero;
      for (std::size_t i = 0; i < n; ++i) {
        acc += gamma(i, j, k).derivative(i);
        acc -= gamma(i, i, k).derivative(j);
      }
      for (std::size_t m = 0; m < n; ++m) {
        accumulate(acc, trace[m], gamma(m, j, k));
        for (std::size_t i = 0; i < n; ++i) accumulate(acc, -gamma(i, j, m), gamma(m, i, k));
      }
      ric(k, j) = acc;
      ric(j, k) = std::move(acc);
    }
  }
  return ric;
}

template <class S>
Jet<S> scalar_curvature(const MetricData<S>& md, const JetTensor<S>& ric) {
  const std::size_t n = md.dim();
  Jet<S> s(n, ric.at_flat(0).order());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) accumulate(s, md.g_inv(i, j), ric(i, j));
  }
  return s;
}

template <class S>
JetTensor<S> schouten(const MetricData<S>& md, const JetTensor<S>& ric, const Jet<S>& s) {
  const std::size_t n = md.dim();
  if (n < 2) throw PreconditionError("the Schouten tensor needs dimension >= 2");
  const S factor = S{1} / S(static_cast<long>(2 * (n - 1)));
  const Jet<S> scaled = s * factor;
  JetTensor<S> p = ric;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) p(i, j) = ric(i, j) - scaled * md.g(i, j);
  }
  return p;
}

template <class S>
JetTensor<S> covariant_derivative(const JetTensor<S>& gamma, const JetTensor<S>& t) {
  const std::size_t n = t.dim();
  if (gamma.dim() != n) throw ArityMismatch("tensor and connection dimensions differ");
  const int order = t.at_flat(0).order() - 1;
  if (order < 0) throw InsufficientJetOrder("covariant derivative of an order-0 jet tensor");

  std::vector<Slot> slots{Slot::Down};
  slots.insert(slots.end(), t.slots().begin(), t.slots().end());
  JetTensor<S> out(n, slots, Jet<S>(n, order));

  std::vector<std::size_t> idx;
  std::vector<std::size_t> shifted;
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    idx = out.unflatten(flat);
    const std::size_t i = idx[0];
    const std::span<const std::size_t> rest(idx.data() + 1, idx.size() - 1);
    Jet<S> acc = t.at(rest).derivative(i);
    shifted.assign(rest.begin(), rest.end());
    for (std::size_t m = 0; m < shifted.size(); ++m) {
      const std::size_t original = shifted[m];
      for (std::size_t l = 0; l < n; ++l) {
        shifted[m] = l;
        if (t.slots()[m] == Slot::Down) {
          accumulate(acc, -gamma(l, i, original), t.at(shifted));
        } else {
          accumulate(acc, gamma(original, i, l), t.at(shifted));
        }
      }
      shifted[m] = original;
    }
    out.at_flat(flat) = std::move(acc);
  }
  return out;
}

template <class S>
JetTensor<S> cotton(const JetTensor<S>& nabla_schouten) {
  const std::size_t n = nabla_schouten.dim();
  JetTensor<S> c = JetTensor<S>::covariant(n, 3, nabla_schouten.at_flat(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) c(i, j, k) = nabla_schouten(i, j, k) - nabla_schouten(j, i, k);
    }
  }
  return c;
}

template <class S>
JetTensor<S> weyl(const MetricData<S>& md, const JetTensor<S>& riem, const JetTensor<S>& p) {
  const std::size_t n = md.dim();
  if (n < 3) throw PreconditionError("the Weyl tensor needs dimension >= 3");
  const S inv = S{1} / S(static_cast<long>(n - 2));
  const auto a = [&](std::size_t i, std::size_t j) { return p(i, j) * inv; };
  const auto& g = md.g;
  JetTensor<S> w = riem;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          w(i, j, k, l) = riem(i, j, k, l) - (a(i, l) * g(j, k) + a(j, k) * g(i, l) -
                                              a(i, k) * g(j, l) - a(j, l) * g(i, k));
        }
      }
    }
  }
  return w;
}

template <class S>
JetTensor<S> metric_tensor(const MetricData<S>& md) {
  const std::size_t n = md.dim();
  JetTensor<S> g = JetTensor<S>::covariant(n, 2, md.g(0, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g(i, j) = md.g(i, j);
  }
  return g;
}

template <class S>
PointCurvature<S> curvature_at(const MetricChart<S>& chart, std::span<const S> point, int order) {
  if (order < 3) throw InsufficientJetOrder("the Cotton tensor needs metric jets of order >= 3");
  MetricData<S> md = metric_data_at(chart, point, order);
  JetTensor<S> gamma = christoffel(md);
  JetTensor<S> riem = riemann(md, gamma);
  JetTensor<S> ric = ricci(gamma);
  Jet<S> s = scalar_curvature(md, ric);
  JetTensor<S> p = schouten(md, ric, s);
  JetTensor<S> np = covariant_derivative(gamma, p);
  JetTensor<S> c = cotton(np);
  std::optional<JetTensor<S>> nc;
  if (order >= 4) nc = covariant_derivative(gamma, c);
  return PointCurvature<S>{std::move(md), std::move(gamma), std::move(riem), std::move(ric), std::move(s),
                           std::move(p),  std::move(np),    std::move(c),    std::move(nc)};
}

template <class S>
JetTensor<S> christoffel_at(const MetricChart<S>& chart, std::span<const S> point, int order) {
  return christoffel(metric_data_at(chart, point, order));
}

template <class S>
JetTensor<S> ricci_at(const MetricChart<S>& chart, std::span<const S> point, int order) {
  return ricci(christoffel(metric_data_at(chart, point, order)));
}

template <class S>
Jet<S> scalar_curvature_at(const MetricChart<S>& chart, std::span<const S> point, int order) {
  const MetricData<S> md = metric_data_at(chart, point, order);
  return scalar_curvature(md, ricci(christoffel(md)));
}

template <class S>
JetTensor<S> schouten_at(const MetricChart<S>& chart, std::span<const S> point, int order) {
  const MetricData<S> md = metric_data_at(chart, point, order);
  const JetTensor<S> ric = ricci(christoffel(md));
  return schouten(md, ric, scalar_curvature(md, ric));
}

template <class S>
JetTensor<S> covariant_derivative_at(const MetricChart<S>& chart, std::span<const S> point,
                                     const JetTensor<S>& t, int order) {
  return covariant_derivative(christoffel(metric_data_at(chart, point, order)), t);
}

template <class S>
JetTensor<S> cotton_at(const MetricChart<S>& chart, std::span<const S> point, int order) {
  const MetricData<S> md = metric_data_at(chart, point, order);
  const JetTensor<S> gamma = christoffel(md);
  const JetTensor<S> ric = ricci(gamma);
  const JetTensor<S> p = schouten(md, ric, scalar_curvature(md, ric));
  return cotton(covariant_derivative(gamma, p));
}

template <class S>
JetTensor<S> nabla_cotton_at(const MetricChart<S>& chart, std::span<const S> point, int order) {
  if (order < 4) {
    throw InsufficientJetOrder("nabla C needs metric jets of order 4, got " + std::to_string(order));
  }
  const MetricData<S> md = metric_data_at(chart, point, order);
  const JetTensor<S> gamma = christoffel(md);
  const JetTensor<S> ric = ricci(gamma);
  const JetTensor<S> p = schouten(md, ric, scalar_curvature(md, ric));
  return covariant_derivative(gamma, cotton(covariant_derivative(gamma, p)));
}

template <class S>
JetTensor<S> weyl_at(const MetricChart<S>& chart, std::span<const S> point, int order) {
  const MetricData<S> md = metric_data_at(chart, point, order);
  const JetTensor<S> gamma = christoffel(md);
  const JetTensor<S> ric = ricci(gamma);
  return weyl(md, riemann(md, gamma), schouten(md, ric, scalar_curvature(md, ric)));
}

template <class S>
S div_schouten_defect(const PointCurvature<S>& pc) {
  const auto& md = pc.metric;
  const std::size_t n = md.dim();
  const int order = pc.nabla_schouten.at_flat(0).order();
  Jet<S> trace(n, order + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) accumulate(trace, md.g_inv(i, j), pc.schouten(i, j));
  }
  S worst{0};
  for (std::size_t k = 0; k < n; ++k) {
    Jet<S> div(n, order);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) accumulate(div, md.g_inv(i, j), pc.nabla_schouten(i, j, k));
    }
    worst = std::max(worst, max_abs_coefficient(div - trace.derivative(k)));
  }
  return worst;
}

template <class S>
bool div_schouten_check(const MetricChart<S>& chart, std::span<const S> point, double tolerance) {
  const S defect = div_schouten_defect(curvature_at(chart, point, 3));
  if constexpr (is_exact_v<S>) {
    return defect.is_zero();
  } else {
    return defect <= tolerance;
  }
}

template <class S>
CottonSymmetryDefects<S> cotton_symmetry_defects(const PointCurvature<S>& pc) {
  const Tensor<S> c = tensor_values(pc.cotton);
  const Matrix<S> g_inv = values(pc.metric.g_inv);
  const std::size_t n = c.dim();
  CottonSymmetryDefects<S> d;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        d.antisymmetry = std::max(d.antisymmetry, abs_value(S(c(i, j, k) + c(j, i, k))));
        d.cyclic = std::max(d.cyclic, abs_value(S(c(i, j, k) + c(j, k, i) + c(k, i, j))));
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    S tr{0};
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) tr = tr + g_inv(i, k) * c(i, j, k);
    }
    d.trace = std::max(d.trace, abs_value(tr));
  }
  return d;
}

template <class S>
S first_bianchi_defect(const JetTensor<S>& riem) {
  const Tensor<S> r = tensor_values(riem);
  const std::size_t n = r.dim();
  S worst{0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          worst = std::max(worst, abs_value(S(r(i, j, k, l) + r(j, k, i, l) + r(k, i, j, l))));
        }
      }
    }
  }
  return worst;
}

template <class S>
S metric_compatibility_defect(const MetricData<S>& md, const JetTensor<S>& gamma) {
  const JetTensor<S> ng = covariant_derivative(gamma, metric_tensor(md));
  S worst{0};
  for (const auto& jet : ng.data()) worst = std::max(worst, max_abs_coefficient(jet));
  return worst;
}

#define COTTON_INSTANTIATE_CURVATURE(S)                                                             \
  template MetricData<S> metric_data_at<S>(const MetricChart<S>&, std::span<const S>, int);         \
  template JetTensor<S> christoffel<S>(const MetricData<S>&);                                       \
  template JetTensor<S> riemann<S>(const MetricData<S>&, const JetTensor<S>&);                      \
  template JetTensor<S> ricci<S>(const JetTensor<S>&);                                              \
  template Jet<S> scalar_curvature<S>(const MetricData<S>&, const JetTensor<S>&);                   \
  template JetTensor<S> schouten<S>(const MetricData<S>&, const JetTensor<S>&, const Jet<S>&);      \
  template JetTensor<S> covariant_derivative<S>(const JetTensor<S>&, const JetTensor<S>&);          \
  template JetTensor<S> cotton<S>(const JetTensor<S>&);                                             \
  template JetTensor<S> weyl<S>(const MetricData<S>&, const JetTensor<S>&, const JetTensor<S>&);    \
  template JetTensor<S> metric_tensor<S>(const MetricData<S>&);                                     \
  template PointCurvature<S> curvature_at<S>(const MetricChart<S>&, std::span<const S>, int);       \
  template JetTensor<S> christoffel_at<S>(const MetricChart<S>&, std::span<const S>, int);          \
  template JetTensor<S> ricci_at<S>(const MetricChart<S>&, std::span<const S>, int);                \
  template Jet<S> scalar_curvature_at<S>(const MetricChart<S>&, std::span<const S>, int);           \
  template JetTensor<S> schouten_at<S>(const MetricChart<S>&, std::span<const S>, int);             \
  template JetTensor<S> covariant_derivative_at<S>(const MetricChart<S>&, std::span<const S>,       \
                                                   const JetTensor<S>&, int);                       \
  template JetTensor<S> cotton_at<S>(const MetricChart<S>&, std::span<const S>, int);               \
  template JetTensor<S> nabla_cotton_at<S>(const MetricChart<S>&, std::span<const S>, int);         \
  template JetTensor<S> weyl_at<S>(const MetricChart<S>&, std::span<const S>, int);                 \
  template S div_schouten_defect<S>(const PointCurvature<S>&);                                      \
  template bool div_schouten_check<S>(const MetricChart<S>&, std::span<const S>, double);            \
  template CottonSymmetryDefects<S> cotton_symmetry_defects<S>(const PointCurvature<S>&);           \
  template S first_bianchi_defect<S>(const JetTensor<S>&);                                          \
  template S metric_compatibility_defect<S>(const MetricData<S>&, const JetTensor<S>&);

COTTON_INSTANTIATE_CURVATURE(Rational)
COTTON_INSTANTIATE_CURVATURE(double)

#undef COTTON_INSTANTIATE_CURVATURE

}  // namespace cotton
