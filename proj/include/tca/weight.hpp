#pragma once

/**
 * Weights, admissible norms and the plain (untwisted) group-algebra
 * operations on finitely supported scalar functions.
 *
 * A weight is nu : G -> [1, inf) with nu(xy) <= nu(x) nu(y) and
 * nu(x^{-1}) = nu(x). Built-in shapes, with l the word length:
 *
 *   one          nu = 1
 *   poly(s)      nu(x) = (1 + l(x))^s
 *   exp(c)       nu(x) = exp(c * l(x))
 *   table        explicit values on a finite group
 *
 * Admissible norms on functions k : G -> C with magnitude map |k|:
 *
 *   L1            sum |k(x)|
 *   L1Weighted    sum nu(x) |k(x)|
 *   LInfWeighted  max theta(x) |k(x)|, theta subconvolutive, meaning
 *                 (theta^{-1} * theta^{-1})(x) <= C theta^{-1}(x); the
 *                 constant C is certified numerically on a ball and
 *                 recorded in the norm object. The first two norms are
 *                 submultiplicative as-is; the third only up to C.
 *
 * The growth diagnostics follow the word-metric balls: with V the canonical
 * generating set (identity included), V^n is exactly {l <= n}, so
 * a_n = (max over ball(n) of nu)^{1/n}, and the shell n is {l = n}.
 */

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tca/group.hpp"
#include "tca/rng.hpp"

namespace tca {

using Cplx = std::complex<double>;
using ScalarFn = std::map<Elem, Cplx>;
using MagnitudeFn = std::map<Elem, double>;

class Weight {
 public:
  enum class Kind { One, Poly, Exp, Table };

  static Weight one() { return Weight(Kind::One, 0.0); }
  static Weight poly(double s) {
    if (!(s >= 0)) throw std::invalid_argument("poly weight needs s >= 0");
    return Weight(Kind::Poly, s);
  }
  static Weight exponential(double c) {
    if (!(c >= 0)) throw std::invalid_argument("exp weight needs c >= 0");
    return Weight(Kind::Exp, c);
  }
  static Weight table(std::map<Elem, double> values) {
    Weight w(Kind::Table, 0.0);
    w.table_ = std::move(values);
    return w;
  }

  Kind kind() const { return kind_; }
  double param() const { return param_; }

  double value(const GroupCtx& G, const Elem& x) const {
    switch (kind_) {
      case Kind::One: return 1.0;
      case Kind::Poly: return std::pow(1.0 + static_cast<double>(G.word_length(x)), param_);
      case Kind::Exp: return std::exp(param_ * static_cast<double>(G.word_length(x)));
      case Kind::Table: {
        auto it = table_.find(x);
        if (it == table_.end())
          throw std::out_of_range("table weight has no value at " + elem_str(x));
        return it->second;
      }
    }
    return 1.0;
  }

  std::string spec() const {
    switch (kind_) {
      case Kind::One: return "one";
      case Kind::Poly: return "poly:s=" + std::to_string(param_);
      case Kind::Exp: return "exp:c=" + std::to_string(param_);
      case Kind::Table: return "table";
    }
    return "one";
  }

 private:
  Weight(Kind k, double p) : kind_(k), param_(p) {}
  Kind kind_;
  double param_;
  std::map<Elem, double> table_;
};

/// Parses "one", "poly:s=<s>", "exp:c=<c>". Table weights are built from
/// explicit values ("table:<file>" is resolved by the config layer).
inline Weight parse_weight(const std::string& s) {
  if (s == "one") return Weight::one();
  if (s.rfind("poly:s=", 0) == 0) return Weight::poly(std::stod(s.substr(7)));
  if (s.rfind("exp:c=", 0) == 0) return Weight::exponential(std::stod(s.substr(6)));
  if (s.rfind("table:", 0) == 0)
    throw std::invalid_argument("table weights need a file; load them through a config");
  throw std::invalid_argument("unknown weight spec '" + s + "'");
}

struct NormSpec {
  enum class Kind { L1, L1Weighted, LInfWeighted };
  Kind kind = Kind::L1;
  Weight weight = Weight::one();
  // LInfWeighted only: certified subconvolutivity data.
  double subconv_constant = 0.0;
  std::int64_t subconv_radius = 0;
};

/// Largest C with (theta^{-1} * theta^{-1})(x) = C theta^{-1}(x) over a ball;
/// both the convolution sum and the sup are truncated to ball(radius).
inline double subconvolutivity_constant(const GroupCtx& G, const Weight& theta,
                                        std::int64_t radius) {
  auto pts = G.finite() ? G.elements() : G.ball(radius);
  double C = 0.0;
  for (const auto& x : pts) {
    double s = 0.0;
    for (const auto& y : pts) {
      Elem rest = G.multiply(G.inverse(y), x);
      if (!G.finite() && G.word_length(rest) > radius) continue;
      s += 1.0 / (theta.value(G, y) * theta.value(G, rest));
    }
    C = std::max(C, s * theta.value(G, x));
  }
  return C;
}

inline NormSpec make_norm(const GroupCtx& G, NormSpec::Kind kind, Weight w = Weight::one(),
                          std::int64_t check_radius = 16) {
  NormSpec n;
  n.kind = kind;
  n.weight = w;
  if (kind == NormSpec::Kind::LInfWeighted) {
    n.subconv_radius = check_radius;
    n.subconv_constant = subconvolutivity_constant(G, w, check_radius);
  }
  return n;
}

/// Norm of a nonnegative magnitude map. This single routine backs the scalar,
/// crossed-element and kernel norms, so coinciding magnitude maps give
/// bit-identical norms.
inline double magnitude_norm(const GroupCtx& G, const MagnitudeFn& mag, const NormSpec& n) {
  double acc = 0.0;
  switch (n.kind) {
    case NormSpec::Kind::L1:
      for (const auto& [x, m] : mag) acc += m;
      return acc;
    case NormSpec::Kind::L1Weighted:
      for (const auto& [x, m] : mag) acc += n.weight.value(G, x) * m;
      return acc;
    case NormSpec::Kind::LInfWeighted:
      for (const auto& [x, m] : mag) acc = std::max(acc, n.weight.value(G, x) * m);
      return acc;
  }
  return acc;
}

inline double fn_norm(const GroupCtx& G, const ScalarFn& f, const NormSpec& n) {
  MagnitudeFn mag;
  for (const auto& [x, v] : f) mag[x] = std::abs(v);
  return magnitude_norm(G, mag, n);
}

/// Plain convolution (f * g)(x) = sum_y f(y) g(y^{-1} x).
inline ScalarFn convolve(const GroupCtx& G, const ScalarFn& f, const ScalarFn& g) {
  ScalarFn out;
  for (const auto& [y, fv] : f)
    for (const auto& [z, gv] : g) out[G.multiply(y, z)] += fv * gv;
  return out;
}

/// Plain involution f^*(x) = conj(f(x^{-1})).
inline ScalarFn involve(const GroupCtx& G, const ScalarFn& f) {
  ScalarFn out;
  for (const auto& [y, v] : f) out[G.inverse(y)] = std::conj(v);
  return out;
}

struct AxiomCheck {
  std::string name;
  bool pass = true;
  double max_violation = 0.0;
  std::vector<Elem> witness;  // elements realizing the worst violation
};

inline std::string witness_str(const std::vector<Elem>& w) {
  std::string out;
  for (const auto& x : w) {
    if (!out.empty()) out += ", ";
    out += elem_str(x);
  }
  return out;
}

struct WeightReport {
  bool pass = true;
  std::vector<AxiomCheck> checks;
};

/**
 * Weight axioms: nu >= 1, nu symmetric under inversion, nu submultiplicative.
 * Finite groups are checked exhaustively; infinite groups on `samples` seeded
 * pairs drawn from ball(radius). Violations are relative, tolerance 1e-12.
 */
inline WeightReport check_weight_axioms(const GroupCtx& G, const Weight& nu, int samples = 10000,
                                        std::uint64_t seed = 1, std::int64_t radius = 8) {
  constexpr double tol = 1e-12;
  AxiomCheck lower{"weight-lower-bound"};
  AxiomCheck sym{"weight-inversion-symmetry"};
  AxiomCheck submult{"weight-submultiplicative"};

  auto visit_point = [&](const Elem& x) {
    double v = nu.value(G, x);
    double low = 1.0 - v;
    if (low > lower.max_violation) {
      lower.max_violation = low;
      lower.witness = {x};
    }
    double s = std::abs(v - nu.value(G, G.inverse(x))) / std::max(1.0, v);
    if (s > sym.max_violation) {
      sym.max_violation = s;
      sym.witness = {x};
    }
  };
  auto visit_pair = [&](const Elem& x, const Elem& y) {
    double lhs = nu.value(G, G.multiply(x, y));
    double rhs = nu.value(G, x) * nu.value(G, y);
    double v = (lhs - rhs) / std::max(1.0, rhs);
    if (v > submult.max_violation) {
      submult.max_violation = v;
      submult.witness = {x, y};
    }
  };

  if (G.finite()) {
    auto all = G.elements();
    for (const auto& x : all) visit_point(x);
    for (const auto& x : all)
      for (const auto& y : all) visit_pair(x, y);
  } else {
    auto pool = G.ball(radius);
    for (const auto& x : pool) visit_point(x);
    Rng rng(seed);
    for (int i = 0; i < samples; ++i) visit_pair(pick(rng, pool), pick(rng, pool));
  }

  WeightReport rep;
  for (AxiomCheck* c : {&lower, &sym, &submult}) {
    c->pass = c->max_violation <= tol;
    rep.pass = rep.pass && c->pass;
    rep.checks.push_back(*c);
  }
  return rep;
}

struct UgrsReport {
  std::vector<double> a;  // a[n-1] for n = 1..n_max
  bool nonincreasing_tail = true;  // over the last five steps
  double final_value = 1.0;
};

/// a_n = (max nu over ball(n))^{1/n}; the growth sequence whose convergence
/// to 1 marks a admissible (GRS-type) weight.
inline UgrsReport check_ugrs(const GroupCtx& G, const Weight& nu, int n_max = 32) {
  if (n_max < 1) throw std::invalid_argument("check_ugrs needs n_max >= 1");
  auto pts = G.ball(n_max);
  std::vector<double> shell_max(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (const auto& x : pts) {
    auto l = static_cast<std::size_t>(G.word_length(x));
    shell_max[l] = std::max(shell_max[l], nu.value(G, x));
  }
  UgrsReport rep;
  double run = shell_max[0];
  for (int n = 1; n <= n_max; ++n) {
    run = std::max(run, shell_max[static_cast<std::size_t>(n)]);
    rep.a.push_back(std::pow(run, 1.0 / static_cast<double>(n)));
  }
  rep.final_value = rep.a.back();
  for (std::size_t i = rep.a.size() >= 6 ? rep.a.size() - 5 : 1; i < rep.a.size(); ++i)
    rep.nonincreasing_tail = rep.nonincreasing_tail && rep.a[i] <= rep.a[i - 1] * (1.0 + 1e-12);
  return rep;
}

struct ShellRatioReport {
  std::vector<double> ratio;  // ratio[n] for n = 0..n_max; empty shells give 1
  double max_ratio = 1.0;
};

/// Per-shell unevenness sup nu / inf nu on {l = n}.
inline ShellRatioReport check_shell_ratio(const GroupCtx& G, const Weight& nu, int n_max = 32) {
  if (n_max < 0) throw std::invalid_argument("check_shell_ratio needs n_max >= 0");
  auto pts = G.ball(n_max);
  std::vector<double> hi(static_cast<std::size_t>(n_max) + 1, 0.0);
  std::vector<double> lo(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (const auto& x : pts) {
    auto l = static_cast<std::size_t>(G.word_length(x));
    double v = nu.value(G, x);
    hi[l] = hi[l] == 0.0 ? v : std::max(hi[l], v);
    lo[l] = lo[l] == 0.0 ? v : std::min(lo[l], v);
  }
  ShellRatioReport rep;
  for (std::size_t n = 0; n < hi.size(); ++n) {
    double r = lo[n] == 0.0 ? 1.0 : hi[n] / lo[n];
    rep.ratio.push_back(r);
    rep.max_ratio = std::max(rep.max_ratio, r);
  }
  return rep;
}

}  // namespace tca
