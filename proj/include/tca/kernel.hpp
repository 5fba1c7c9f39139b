#pragma once

/**
 * Band-limited two-variable kernels K(x, y) with coefficient values,
 * stored by diagonals: for each band element a the function
 *
 *   d_a(z) := K(z, a^{-1} z)
 *
 * is a finite window of explicit values plus one tail coefficient t with
 * the off-window convention d_a(z) = alpha_{z^{-1}}[t].  A diagonal whose
 * window is empty is exactly covariant, and gamma lands there:
 * (Gamma f)(x, y) = alpha_{x^{-1}}[f(x y^{-1})] is the tail-only kernel
 * with t_a = f(a).
 *
 * Composition and involution
 *
 *   (K . L)(x, y) = sum_z K(x, z) L(z, y) alpha_{x^{-1}}[omega(x z^{-1}, z y^{-1})]
 *   K^*(x, y)     = alpha_{x^{-1}}[omega(x y^{-1}, y x^{-1})^*] K(y, x)^*
 *
 * are evaluated as exact finite sums over diagonal pairs.  On tail-only
 * kernels they accumulate the same expressions in the same order as the
 * convolution algebra's product and involution, so the morphism identities
 * for gamma hold to the last bit, as does the norm: kappa(a) is the exact
 * per-diagonal sup and the kernel norm is the admissible norm of kappa.
 *
 * Covariance K(xz, yz) = alpha_{z^{-1}}[K(x, y)] is checked exactly, not
 * sampled: with c(x) := alpha_x[d_a(x)], the sup of the covariance defect
 * over all pairs equals the diameter of the finite candidate set
 * {c(x) : x in window} plus the tail (present whenever some point lies
 * off-window), because alpha is an isometry.
 *
 * Scalar kernels are the base-point evaluations (upsilon) of kernels over
 * a standard-model system: (Y K)(x, y) = K(x, y; e).  Their twisted
 * operations carry the phase omega(x z^{-1}, z y^{-1}) evaluated at the
 * point x, which is exactly what the base-point evaluation of the
 * coefficient-level phase alpha_{x^{-1}}[omega(...)] produces.
 */

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "tca/crossed.hpp"
#include "tca/system.hpp"
#include "tca/weight.hpp"

namespace tca {

struct Diagonal {
  std::map<Elem, Coefficient> window;  // explicit values d_a(z)
  Coefficient tail;                    // off-window values alpha_{z^{-1}}[tail]
};

struct KernelElement {
  std::map<Elem, Diagonal> diags;  // band element a -> (z -> K(z, a^{-1} z))

  std::size_t band_size() const { return diags.size(); }
};

inline Coefficient diagonal_value(const TwistedSystem& sys, const Diagonal& d, const Elem& z) {
  auto it = d.window.find(z);
  if (it != d.window.end()) return it->second;
  return sys.act(sys.G->inverse(z), d.tail);
}

inline Coefficient kernel_value(const TwistedSystem& sys, const KernelElement& K, const Elem& x,
                                const Elem& y) {
  const Elem a = sys.G->multiply(x, sys.G->inverse(y));
  auto it = K.diags.find(a);
  if (it == K.diags.end()) return sys.zero();
  return diagonal_value(sys, it->second, x);
}

/// Drops window entries that equal the value the tail already implies and
/// diagonals that are zero outright.  Changes no evaluated value.
inline void normalize(const TwistedSystem& sys, KernelElement& K) {
  const auto& G = *sys.G;
  for (auto it = K.diags.begin(); it != K.diags.end();) {
    Diagonal& d = it->second;
    for (auto w = d.window.begin(); w != d.window.end();) {
      if (sup_dist(w->second, sys.act(G.inverse(w->first), d.tail)) == 0.0)
        w = d.window.erase(w);
      else
        ++w;
    }
    if (d.window.empty() && d.tail.sup_norm() < kPruneEps)
      it = K.diags.erase(it);
    else
      ++it;
  }
}

inline KernelElement gamma(const TwistedSystem& sys, const CrossedElement& f) {
  KernelElement K;
  for (const auto& [x, c] : f.terms) K.diags.emplace(x, Diagonal{{}, c});
  return K;
}

/// Exact covariance defect, reported per worst diagonal.
struct CovarianceReport {
  bool covariant = true;
  double residual = 0.0;
  Elem witness;  // band element of the worst diagonal
};

inline CovarianceReport is_covariant(const TwistedSystem& sys, const KernelElement& K,
                                     double tol = 1e-12) {
  const auto& G = *sys.G;
  CovarianceReport rep;
  for (const auto& [a, d] : K.diags) {
    // c(x) = alpha_x[d_a(x)] is constant iff the diagonal is covariant; the
    // sup of |d_a(xz) - alpha_{z^{-1}}[d_a(x)]| equals the diameter of its
    // range because alpha preserves the sup norm.
    std::vector<Coefficient> cand;
    cand.reserve(d.window.size() + 1);
    for (const auto& [x, v] : d.window) cand.push_back(sys.act(x, v));
    const bool has_off_window = !G.finite() || d.window.size() < G.order();
    if (has_off_window) cand.push_back(d.tail);
    double diam = 0.0;
    for (std::size_t i = 0; i < cand.size(); ++i)
      for (std::size_t j = i + 1; j < cand.size(); ++j)
        diam = std::max(diam, sup_dist(cand[i], cand[j]));
    if (diam > rep.residual) {
      rep.residual = diam;
      rep.witness = a;
    }
  }
  rep.covariant = rep.residual < tol;
  return rep;
}

inline CrossedElement gamma_inverse(const TwistedSystem& sys, const KernelElement& K,
                                    double tol = 1e-12) {
  const CovarianceReport rep = is_covariant(sys, K, tol);
  if (!rep.covariant) throw std::domain_error("kernel is not covariant");
  CrossedElement f;
  for (const auto& [a, d] : K.diags) {
    // f(a) = alpha_a[K(a, e)]; tail-only diagonals skip the alpha round trip.
    const Coefficient c =
        d.window.empty() ? d.tail : sys.act(a, diagonal_value(sys, d, a));
    crossed_add_term(f, a, c);
  }
  return f;
}

inline KernelElement compose(const TwistedSystem& sys, const KernelElement& K,
                             const KernelElement& L) {
  if (K.diags.size() * L.diags.size() > kMaxProductPairs)
    throw std::length_error("kernel band budget exceeded");
  const auto& G = *sys.G;
  KernelElement out;
  for (const auto& [a, dK] : K.diags) {
    const Elem ai = G.inverse(a);
    for (const auto& [b, dL] : L.diags) {
      const Elem c = G.multiply(a, b);
      const Coefficient phase = sys.omega(a, b);
      // Off both windows the summand is alpha_{x^{-1}} of this constant.
      const Coefficient pair_tail = dK.tail * sys.act(a, dL.tail) * phase;
      // Points where either factor deviates from its tail.
      std::set<Elem> pts;
      for (const auto& [x, v] : dK.window) pts.insert(x);
      for (const auto& [z, v] : dL.window) pts.insert(G.multiply(a, z));
      std::map<Elem, Coefficient> expl;
      for (const Elem& x : pts) {
        const Coefficient vK = diagonal_value(sys, dK, x);
        const Coefficient vL = diagonal_value(sys, dL, G.multiply(ai, x));
        expl.emplace(x, vK * vL * sys.act(G.inverse(x), phase));
      }
      auto it = out.diags.find(c);
      if (it == out.diags.end()) {
        out.diags.emplace(c, Diagonal{std::move(expl), pair_tail});
      } else {
        Diagonal& d = it->second;
        for (const auto& [x, v] : expl)
          if (!d.window.count(x)) d.window.emplace(x, sys.act(G.inverse(x), d.tail));
        for (auto& [x, v] : d.window) {
          auto e = expl.find(x);
          v = v + (e != expl.end() ? e->second : sys.act(G.inverse(x), pair_tail));
        }
        d.tail = d.tail + pair_tail;
      }
    }
  }
  normalize(sys, out);
  return out;
}

inline KernelElement involve_kernel(const TwistedSystem& sys, const KernelElement& K) {
  const auto& G = *sys.G;
  KernelElement out;
  for (const auto& [u, din] : K.diags) {
    const Elem c = G.inverse(u);  // output band element
    const Coefficient ph = sys.omega(c, u).adjoint();
    Diagonal d;
    d.tail = ph * sys.act(c, din.tail).adjoint();
    for (const auto& [z, v] : din.window) {
      const Elem x = G.multiply(c, z);  // the point with c^{-1} x = z
      d.window.emplace(x, sys.act(G.inverse(x), ph) * v.adjoint());
    }
    out.diags.emplace(c, std::move(d));
  }
  normalize(sys, out);
  return out;
}

/// kappa(a) = sup_z |K(z, a^{-1} z)|, exact per diagonal.
inline MagnitudeFn kappa(const TwistedSystem& sys, const KernelElement& K) {
  const auto& G = *sys.G;
  MagnitudeFn k;
  for (const auto& [a, d] : K.diags) {
    double s = 0.0;
    if (G.finite()) {
      for (const Elem& z : G.elements())
        s = std::max(s, diagonal_value(sys, d, z).sup_norm());
    } else {
      for (const auto& [x, v] : d.window) s = std::max(s, v.sup_norm());
      s = std::max(s, d.tail.sup_norm());  // alpha preserves the sup norm
    }
    k[a] = s;
  }
  return k;
}

inline double kernel_norm(const TwistedSystem& sys, const KernelElement& K, const NormSpec& n) {
  return magnitude_norm(*sys.G, kappa(sys, K), n);
}

/// Exact sup over all (x, y) of the coefficient distance of two kernels.
inline double kernel_dist(const TwistedSystem& sys, const KernelElement& A,
                          const KernelElement& B) {
  const auto& G = *sys.G;
  const Diagonal zero{{}, sys.zero()};
  std::set<Elem> band;
  for (const auto& [a, d] : A.diags) band.insert(a);
  for (const auto& [a, d] : B.diags) band.insert(a);
  double worst = 0.0;
  for (const Elem& a : band) {
    auto ia = A.diags.find(a);
    auto ib = B.diags.find(a);
    const Diagonal& da = ia == A.diags.end() ? zero : ia->second;
    const Diagonal& db = ib == B.diags.end() ? zero : ib->second;
    if (G.finite()) {
      for (const Elem& z : G.elements())
        worst = std::max(worst, sup_dist(diagonal_value(sys, da, z), diagonal_value(sys, db, z)));
    } else {
      std::set<Elem> pts;
      for (const auto& [x, v] : da.window) pts.insert(x);
      for (const auto& [x, v] : db.window) pts.insert(x);
      for (const Elem& x : pts)
        worst = std::max(worst, sup_dist(diagonal_value(sys, da, x), diagonal_value(sys, db, x)));
      worst = std::max(worst, sup_dist(da.tail, db.tail));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Scalar kernels: complex-valued band-limited kernels over a standard-model
// system, the image of the coefficient kernels under base-point evaluation.

struct ScalarDiagonal {
  std::map<Elem, Cplx> window;
  Cplx tail{0.0, 0.0};  // off-window values are exactly this constant
};

struct ScalarKernel {
  std::map<Elem, ScalarDiagonal> diags;
};

namespace detail {
inline void require_standard(const TwistedSystem& sys) {
  if (sys.model != Model::Standard)
    throw std::invalid_argument("scalar kernels need the standard function model");
}
}  // namespace detail

inline Cplx scalar_diagonal_value(const ScalarDiagonal& d, const Elem& z) {
  auto it = d.window.find(z);
  return it == d.window.end() ? d.tail : it->second;
}

inline Cplx scalar_kernel_value(const TwistedSystem& sys, const ScalarKernel& K, const Elem& x,
                                const Elem& y) {
  const Elem a = sys.G->multiply(x, sys.G->inverse(y));
  auto it = K.diags.find(a);
  return it == K.diags.end() ? Cplx(0.0, 0.0) : scalar_diagonal_value(it->second, x);
}

inline void scalar_normalize(ScalarKernel& K) {
  for (auto it = K.diags.begin(); it != K.diags.end();) {
    ScalarDiagonal& d = it->second;
    for (auto w = d.window.begin(); w != d.window.end();)
      w = w->second == d.tail ? d.window.erase(w) : std::next(w);
    if (d.window.empty() && std::abs(d.tail) < kPruneEps)
      it = K.diags.erase(it);
    else
      ++it;
  }
}

/// Base-point evaluation (Y K)(x, y) = K(x, y; e).
inline ScalarKernel upsilon(const TwistedSystem& sys, const KernelElement& K) {
  detail::require_standard(sys);
  const auto& G = *sys.G;
  const Elem e = G.identity();
  ScalarKernel S;
  for (const auto& [a, d] : K.diags) {
    ScalarDiagonal sd;
    sd.tail = d.tail.background();
    // Off-window, d_a(x) evaluated at e is tail(x): explicit wherever the
    // tail's correction is supported.
    for (const auto& [y, v] : d.tail.correction())
      if (!d.window.count(y)) sd.window.emplace(y, d.tail.eval(SigmaPoint::at_point(y)));
    for (const auto& [x, v] : d.window)
      sd.window[x] = v.eval(SigmaPoint::at_point(e));
    S.diags.emplace(a, std::move(sd));
  }
  return S;
}

inline ScalarKernel scalar_compose(const TwistedSystem& sys, const ScalarKernel& A,
                                   const ScalarKernel& B) {
  detail::require_standard(sys);
  if (A.diags.size() * B.diags.size() > kMaxProductPairs)
    throw std::length_error("kernel band budget exceeded");
  const auto& G = *sys.G;
  ScalarKernel out;
  for (const auto& [a, da] : A.diags) {
    const Elem ai = G.inverse(a);
    for (const auto& [b, db] : B.diags) {
      const Elem c = G.multiply(a, b);
      const Coefficient ph = sys.omega(a, b);
      const Cplx pair_tail = da.tail * db.tail * ph.background();
      // Explicit wherever a factor or the phase deviates from its constant.
      std::set<Elem> pts;
      for (const auto& [x, v] : da.window) pts.insert(x);
      for (const auto& [z, v] : db.window) pts.insert(G.multiply(a, z));
      for (const auto& [y, v] : ph.correction()) pts.insert(y);
      auto it = out.diags.find(c);
      if (it == out.diags.end()) it = out.diags.emplace(c, ScalarDiagonal{}).first;
      ScalarDiagonal& d = it->second;
      for (const Elem& x : pts)
        if (!d.window.count(x)) d.window.emplace(x, d.tail);
      for (auto& [x, v] : d.window) {
        if (pts.count(x))
          v += scalar_diagonal_value(da, x) * scalar_diagonal_value(db, G.multiply(ai, x)) *
               ph.eval(SigmaPoint::at_point(x));
        else
          v += pair_tail;
      }
      d.tail += pair_tail;
    }
  }
  scalar_normalize(out);
  return out;
}

inline ScalarKernel scalar_involve(const TwistedSystem& sys, const ScalarKernel& A) {
  detail::require_standard(sys);
  const auto& G = *sys.G;
  ScalarKernel out;
  for (const auto& [u, din] : A.diags) {
    const Elem c = G.inverse(u);  // output band element
    const Coefficient ph = sys.omega(c, u);
    ScalarDiagonal d;
    d.tail = std::conj(ph.background()) * std::conj(din.tail);
    std::set<Elem> pts;
    for (const auto& [z, v] : din.window) pts.insert(G.multiply(c, z));
    for (const auto& [y, v] : ph.correction()) pts.insert(y);
    for (const Elem& x : pts)
      d.window.emplace(x, std::conj(ph.eval(SigmaPoint::at_point(x))) *
                              std::conj(scalar_diagonal_value(din, G.multiply(u, x))));
    out.diags.emplace(c, std::move(d));
  }
  scalar_normalize(out);
  return out;
}

inline MagnitudeFn scalar_kappa(const TwistedSystem& sys, const ScalarKernel& K) {
  const auto& G = *sys.G;
  MagnitudeFn k;
  for (const auto& [a, d] : K.diags) {
    double s = 0.0;
    if (G.finite()) {
      for (const Elem& z : G.elements()) s = std::max(s, std::abs(scalar_diagonal_value(d, z)));
    } else {
      for (const auto& [x, v] : d.window) s = std::max(s, std::abs(v));
      s = std::max(s, std::abs(d.tail));
    }
    k[a] = s;
  }
  return k;
}

inline double scalar_norm(const TwistedSystem& sys, const ScalarKernel& K, const NormSpec& n) {
  return magnitude_norm(*sys.G, scalar_kappa(sys, K), n);
}

inline double scalar_kernel_dist(const TwistedSystem& sys, const ScalarKernel& A,
                                 const ScalarKernel& B) {
  const auto& G = *sys.G;
  const ScalarDiagonal zero;
  std::set<Elem> band;
  for (const auto& [a, d] : A.diags) band.insert(a);
  for (const auto& [a, d] : B.diags) band.insert(a);
  double worst = 0.0;
  for (const Elem& a : band) {
    auto ia = A.diags.find(a);
    auto ib = B.diags.find(a);
    const ScalarDiagonal& da = ia == A.diags.end() ? zero : ia->second;
    const ScalarDiagonal& db = ib == B.diags.end() ? zero : ib->second;
    if (G.finite()) {
      for (const Elem& z : G.elements())
        worst = std::max(worst, std::abs(scalar_diagonal_value(da, z) - scalar_diagonal_value(db, z)));
    } else {
      std::set<Elem> pts;
      for (const auto& [x, v] : da.window) pts.insert(x);
      for (const auto& [x, v] : db.window) pts.insert(x);
      for (const Elem& x : pts)
        worst = std::max(worst, std::abs(scalar_diagonal_value(da, x) - scalar_diagonal_value(db, x)));
      worst = std::max(worst, std::abs(da.tail - db.tail));
    }
  }
  return worst;
}

}  // namespace tca
