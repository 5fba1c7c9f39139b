#pragma once

/**
 * Finitely supported elements of the twisted convolution algebra of a
 * system: formal sums f = sum_x f(x) delta_x with coefficients in the
 * system's model, multiplied by
 *
 *   (f . g)(x) = sum_y f(y) alpha_y[g(y^{-1} x)] omega(y, y^{-1} x)
 *
 * and starred by
 *
 *   f^*(x) = omega(x, x^{-1})^* alpha_x[f(x^{-1})]^*.
 *
 * Norms are admissible norms of the magnitude function x -> |f(x)|_A,
 * evaluated by the same routine scalar functions use, so norms agree
 * bit for bit across the scalar and coefficient views of one element.
 *
 * The three-variable evaluators compute the same operations pointwise,
 *
 *   (f . g)(x; s) = sum_y f(y; s) g(y^{-1} x; y^{-1} s) omega(y, y^{-1} x; s)
 *   f^*(x; s)     = conj(omega(x, x^{-1}; s)) conj(f(x^{-1}; x^{-1} s))
 *
 * through a separate code path, which makes them usable as an oracle for
 * the coefficient route.
 */

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "tca/system.hpp"
#include "tca/weight.hpp"

namespace tca {

/// Pair budget for one convolution; products needing more work are refused.
inline constexpr std::size_t kMaxProductPairs = 2'000'000;

/// Support budget for repeated squaring; exceeding it stops the chain.
inline constexpr std::size_t kPowerSupportBudget = 200'000;

/// Accumulated coefficients below this magnitude are dropped from supports.
inline constexpr double kPruneEps = 1e-300;

struct CrossedElement {
  std::map<Elem, Coefficient> terms;  // exact zeros are never stored

  std::size_t support_size() const { return terms.size(); }
};

inline void crossed_add_term(CrossedElement& f, const Elem& x, const Coefficient& c) {
  auto it = f.terms.find(x);
  if (it == f.terms.end()) {
    if (c.sup_norm() >= kPruneEps) f.terms.emplace(x, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.sup_norm() < kPruneEps) f.terms.erase(it);
}

inline CrossedElement crossed_delta(const TwistedSystem& sys, const Elem& x, const Coefficient& c) {
  sys.G->validate(x);
  if (c.model() != sys.model || (sys.model == Model::FiniteSpectrum && c.sigma_size() != sys.sigma_size))
    throw std::invalid_argument("coefficient is not in the system's model");
  CrossedElement f;
  crossed_add_term(f, x, c);
  return f;
}

inline CrossedElement crossed_delta(const TwistedSystem& sys, const Elem& x, Cplx v = 1.0) {
  return crossed_delta(sys, x, sys.constant(v));
}

inline CrossedElement crossed_identity(const TwistedSystem& sys) {
  return crossed_delta(sys, sys.G->identity(), sys.one());
}

inline CrossedElement crossed_sum(const CrossedElement& f, const CrossedElement& g) {
  CrossedElement out = f;
  for (const auto& [x, c] : g.terms) crossed_add_term(out, x, c);
  return out;
}

inline CrossedElement crossed_scale(const CrossedElement& f, Cplx t) {
  CrossedElement out;
  for (const auto& [x, c] : f.terms) crossed_add_term(out, x, c.scaled(t));
  return out;
}

inline CrossedElement crossed_product(const TwistedSystem& sys, const CrossedElement& f,
                                      const CrossedElement& g) {
  if (f.terms.size() * g.terms.size() > kMaxProductPairs)
    throw std::length_error("convolution support budget exceeded");
  const auto& G = *sys.G;
  CrossedElement out;
  for (const auto& [y, a] : f.terms) {
    for (const auto& [z, b] : g.terms) {
      const Elem x = G.multiply(y, z);
      crossed_add_term(out, x, a * sys.act(y, b) * sys.omega(y, z));
    }
  }
  return out;
}

inline CrossedElement crossed_involution(const TwistedSystem& sys, const CrossedElement& f) {
  const auto& G = *sys.G;
  CrossedElement out;
  for (const auto& [u, a] : f.terms) {
    const Elem x = G.inverse(u);
    crossed_add_term(out, x, sys.omega(x, u).adjoint() * sys.act(x, a).adjoint());
  }
  return out;
}

inline CrossedElement crossed_power(const TwistedSystem& sys, const CrossedElement& f, unsigned n) {
  CrossedElement out = crossed_identity(sys);
  for (unsigned i = 0; i < n; ++i) out = crossed_product(sys, out, f);
  return out;
}

/// Repeated-squaring chain f, f^2, f^4, ... with norms recorded per level.
struct PowerTrace {
  CrossedElement value;          // the largest power computed, f^(2^levels_computed)
  std::vector<double> norms;     // norms[j] = |f^(2^j)|, j = 0..levels_computed
  unsigned levels_computed = 0;
  bool budget_exceeded = false;  // chain stopped early; value is a partial result
};

inline double crossed_norm(const TwistedSystem& sys, const CrossedElement& f, const NormSpec& norm);

inline PowerTrace power_trace(const TwistedSystem& sys, const CrossedElement& f, unsigned levels,
                              const NormSpec& norm,
                              std::size_t support_budget = kPowerSupportBudget) {
  PowerTrace tr;
  tr.value = f;
  tr.norms.push_back(crossed_norm(sys, f, norm));
  for (unsigned j = 1; j <= levels; ++j) {
    const std::size_t n = tr.value.support_size();
    if (n > support_budget || n * n > kMaxProductPairs) {
      tr.budget_exceeded = true;
      break;
    }
    tr.value = crossed_product(sys, tr.value, tr.value);
    tr.norms.push_back(crossed_norm(sys, tr.value, norm));
    tr.levels_computed = j;
  }
  return tr;
}

inline MagnitudeFn magnitude_of(const CrossedElement& f) {
  MagnitudeFn k;
  for (const auto& [x, c] : f.terms) k[x] = c.sup_norm();
  return k;
}

inline double crossed_norm(const TwistedSystem& sys, const CrossedElement& f, const NormSpec& norm) {
  return magnitude_norm(*sys.G, magnitude_of(f), norm);
}

/// Sup over the union of supports of the coefficient distance.
inline double crossed_dist(const TwistedSystem& sys, const CrossedElement& f, const CrossedElement& g) {
  double worst = 0.0;
  for (const auto& [x, c] : f.terms) {
    auto it = g.terms.find(x);
    worst = std::max(worst, it == g.terms.end() ? c.sup_norm() : sup_dist(c, it->second));
  }
  for (const auto& [x, c] : g.terms)
    if (!f.terms.count(x)) worst = std::max(worst, c.sup_norm());
  return worst;
}

inline Cplx eval_at(const CrossedElement& f, const Elem& x, const SigmaPoint& p) {
  auto it = f.terms.find(x);
  return it == f.terms.end() ? Cplx(0.0, 0.0) : it->second.eval(p);
}

/// (f . g)(x; s) computed purely from point evaluations.
inline Cplx pointwise_product(const TwistedSystem& sys, const CrossedElement& f,
                              const CrossedElement& g, const Elem& x, const SigmaPoint& p) {
  const auto& G = *sys.G;
  Cplx acc = 0.0;
  for (const auto& [y, a] : f.terms) {
    const Elem yi = G.inverse(y);
    const Elem z = G.multiply(yi, x);
    if (!g.terms.count(z)) continue;
    acc += a.eval(p) * eval_at(g, z, sys.act_point(yi, p)) * sys.omega_at(y, z, p);
  }
  return acc;
}

/// f^*(x; s) computed purely from point evaluations.
inline Cplx pointwise_involution(const TwistedSystem& sys, const CrossedElement& f, const Elem& x,
                                 const SigmaPoint& p) {
  const auto& G = *sys.G;
  const Elem xi = G.inverse(x);
  return std::conj(sys.omega_at(x, xi, p)) * std::conj(eval_at(f, xi, sys.act_point(xi, p)));
}

/// Tabulated two-variable form f(x; s) of an element with function
/// coefficients; rows follow the support, columns the listed points.
struct ThreeVariableView {
  std::vector<SigmaPoint> points;
  std::map<Elem, std::vector<Cplx>> table;  // table[x][i] = f(x; points[i])
};

inline ThreeVariableView scalar_case_abelian(const TwistedSystem& sys, const CrossedElement& f,
                                             std::vector<Elem> window = {}) {
  if (sys.model == Model::Scalar)
    throw std::invalid_argument("tabulated view needs function coefficients");
  if (sys.model == Model::Standard && window.empty()) {
    // Default to the points where some coefficient deviates from its background.
    std::set<Elem> pts;
    for (const auto& [x, c] : f.terms)
      for (const auto& [y, v] : c.correction()) pts.insert(y);
    window.assign(pts.begin(), pts.end());
  }
  ThreeVariableView view;
  view.points = sys.sigma_points(window);
  for (const auto& [x, c] : f.terms) {
    auto& row = view.table[x];
    row.reserve(view.points.size());
    for (const auto& p : view.points) row.push_back(c.eval(p));
  }
  return view;
}

}  // namespace tca
