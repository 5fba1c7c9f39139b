#pragma once

/**
 * Twisted system: a group G acting on a coefficient model together with a
 * normalized 2-cocycle taking unitary values in that model.
 *
 * The data obeys
 *
 *   alpha_x . alpha_y = alpha_{xy}
 *   omega(x, e) = omega(e, x) = 1
 *   alpha_x[omega(y, z)] . omega(x, yz) = omega(x, y) . omega(xy, z)
 *
 * verify_axioms checks all of these numerically (exhaustively on small
 * finite groups, sampled otherwise) and reports per-axiom residuals with
 * witnesses, so corrupted tables are caught before any algebra runs.
 *
 * Actions:
 *   Trivial      any model
 *   Point        FiniteSpectrum; G permutes the spectrum points. Built from
 *                permutations attached to generators: on finite groups the
 *                full table is grown by breadth-first search (inconsistent
 *                generator data is rejected), on lattices one permutation
 *                per axis is given and the axis permutations must commute.
 *   Translation  Standard model; [alpha_x phi](y) = phi(x^{-1} y).
 *
 * Cocycles:
 *   Trivial | Theta | Table | SigmaDependent.
 *   Theta is the lattice phase omega(x, y) = exp(2 pi i x^T Theta y) with
 *   Theta real skew-symmetric; the phase is computed from the strictly
 *   upper triangle as sum_{i<j} Theta_ij (x_i y_j - x_j y_i), which makes
 *   omega(x, -x) = 1 exact in floating point.
 *   Tables store one coefficient per pair of group elements. A coboundary
 *   builder produces tables from a unitary b via
 *   omega(x, y) = b(x) . alpha_x[b(y)] . b(xy)^*; on infinite groups the
 *   table is evaluated lazily from a finitely supported b.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tca/coefficient.hpp"
#include "tca/group.hpp"
#include "tca/rng.hpp"
#include "tca/weight.hpp"

namespace tca {

using Perm = std::vector<int>;

namespace detail {

inline void require_perm(const Perm& p, int m) {
  if (static_cast<int>(p.size()) != m)
    throw std::invalid_argument("permutation size does not match the spectrum");
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  for (int v : p) {
    if (v < 0 || v >= m || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("permutation table is not a bijection");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

inline Perm perm_identity(int m) {
  Perm p(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

/// (a o b)[s] = a[b[s]].
inline Perm perm_compose(const Perm& a, const Perm& b) {
  Perm out(a.size());
  for (std::size_t s = 0; s < a.size(); ++s)
    out[s] = a[static_cast<std::size_t>(b[s])];
  return out;
}

inline Perm perm_inverse(const Perm& p) {
  Perm out(p.size());
  for (std::size_t s = 0; s < p.size(); ++s) out[static_cast<std::size_t>(p[s])] = static_cast<int>(s);
  return out;
}

inline Perm perm_pow(Perm p, std::int64_t k) {
  if (k < 0) {
    p = perm_inverse(p);
    k = -k;
  }
  Perm acc = perm_identity(static_cast<int>(p.size()));
  while (k > 0) {
    if (k & 1) acc = perm_compose(acc, p);
    p = perm_compose(p, p);
    k >>= 1;
  }
  return acc;
}

}  // namespace detail

class Action {
 public:
  enum class Kind { Trivial, Point, Translation };

  static Action trivial() { return Action(Kind::Trivial); }

  static Action translation(GroupPtr G) {
    Action a(Kind::Translation);
    a.G_ = std::move(G);
    return a;
  }

  /**
   * Point action from permutations attached to group generators. Keys of
   * `generator_perms` must be group elements; each value is the
   * permutation sigma -> g . sigma. Inverse generators may be omitted.
   * Finite groups grow the full table by BFS and require the keys to
   * generate the group; lattices require exactly the unit vectors per
   * axis (or their negatives) and the axis permutations must commute.
   */
  static Action point(GroupPtr G, int sigma_size,
                      const std::map<Elem, Perm>& generator_perms) {
    if (sigma_size < 1) throw std::invalid_argument("point action needs a nonempty spectrum");
    Action a(Kind::Point);
    a.G_ = G;
    a.sigma_ = sigma_size;
    for (const auto& [g, p] : generator_perms) {
      G->validate(g);
      if (G->is_identity(g)) throw std::invalid_argument("generator permutations must omit the identity");
      detail::require_perm(p, sigma_size);
    }
    bool lattice_only = true;
    for (const auto& f : G->factors()) lattice_only = lattice_only && f.kind == GroupCtx::Kind::Lattice;
    if (G->finite()) {
      a.build_finite_table(generator_perms);
    } else if (lattice_only) {
      a.build_axis_perms(generator_perms);
    } else {
      throw std::invalid_argument("point actions support finite groups and lattices only");
    }
    return a;
  }

  Kind kind() const { return kind_; }
  int sigma_size() const { return sigma_; }

  std::string kind_name() const {
    switch (kind_) {
      case Kind::Trivial: return "trivial";
      case Kind::Point: return "point";
      case Kind::Translation: return "translation";
    }
    return "trivial";
  }

  /// x . sigma on spectrum points; background is fixed by every action.
  SigmaPoint act_point(const GroupCtx& G, const Elem& x, const SigmaPoint& p) const {
    switch (kind_) {
      case Kind::Trivial: return p;
      case Kind::Point: {
        if (p.kind != SigmaPoint::Kind::Index)
          throw std::out_of_range("sigma point " + p.str() + " is not a spectrum index");
        const Perm perm = perm_of(G, x);
        if (p.index < 0 || p.index >= sigma_) throw std::out_of_range("spectrum index out of range");
        return SigmaPoint::at_index(perm[static_cast<std::size_t>(p.index)]);
      }
      case Kind::Translation:
        if (p.kind == SigmaPoint::Kind::Background) return p;
        if (p.kind != SigmaPoint::Kind::Point)
          throw std::out_of_range("sigma point " + p.str() + " is not a group point");
        return SigmaPoint::at_point(G.multiply(x, p.point));
    }
    return p;
  }

  /// alpha_x on coefficients: [alpha_x c](sigma) = c(x^{-1} . sigma).
  Coefficient act(const GroupCtx& G, const Elem& x, const Coefficient& c) const {
    switch (kind_) {
      case Kind::Trivial: return c;
      case Kind::Point: {
        if (c.model() != Model::FiniteSpectrum || c.sigma_size() != sigma_)
          throw std::invalid_argument("point action needs finite-spectrum coefficients");
        const Perm inv = perm_of(G, G.inverse(x));
        std::vector<Cplx> out(static_cast<std::size_t>(sigma_));
        for (int s = 0; s < sigma_; ++s)
          out[static_cast<std::size_t>(s)] = c.values()[static_cast<std::size_t>(inv[static_cast<std::size_t>(s)])];
        return Coefficient::finite(std::move(out));
      }
      case Kind::Translation: {
        if (c.model() != Model::Standard)
          throw std::invalid_argument("translation acts on the standard model");
        ScalarFn corr;
        for (const auto& [y, v] : c.correction()) corr[G.multiply(x, y)] = v;
        return Coefficient::standard(c.background(), std::move(corr));
      }
    }
    return c;
  }

 private:
  explicit Action(Kind k) : kind_(k) {}

  void build_finite_table(const std::map<Elem, Perm>& gen_perms) {
    const auto elems = G_->elements();
    std::map<Elem, int> idx;
    for (std::size_t i = 0; i < elems.size(); ++i) idx[elems[i]] = static_cast<int>(i);
    index_ = idx;
    table_.assign(elems.size(), {});

    std::vector<std::pair<Elem, Perm>> steps;
    for (const auto& [g, p] : gen_perms) {
      steps.emplace_back(g, p);
      steps.emplace_back(G_->inverse(g), detail::perm_inverse(p));
    }

    const Elem e = G_->identity();
    table_[static_cast<std::size_t>(idx.at(e))] = detail::perm_identity(sigma_);
    std::vector<bool> known(elems.size(), false);
    known[static_cast<std::size_t>(idx.at(e))] = true;
    std::queue<Elem> q;
    q.push(e);
    std::size_t reached = 1;
    while (!q.empty()) {
      const Elem x = q.front();
      q.pop();
      const Perm& px = table_[static_cast<std::size_t>(idx.at(x))];
      for (const auto& [g, pg] : steps) {
        const Elem y = G_->multiply(x, g);
        Perm py(static_cast<std::size_t>(sigma_));
        for (int s = 0; s < sigma_; ++s)
          py[static_cast<std::size_t>(s)] = px[static_cast<std::size_t>(pg[static_cast<std::size_t>(s)])];
        const auto yi = static_cast<std::size_t>(idx.at(y));
        if (!known[yi]) {
          known[yi] = true;
          table_[yi] = std::move(py);
          q.push(y);
          ++reached;
        } else if (table_[yi] != py) {
          throw std::invalid_argument("generator permutations are inconsistent at " + elem_str(y));
        }
      }
    }
    if (reached != elems.size())
      throw std::invalid_argument("generator permutations do not cover a generating set");
  }

  void build_axis_perms(const std::map<Elem, Perm>& gen_perms) {
    const std::size_t n = static_cast<std::size_t>(G_->coords());
    axis_.assign(n, {});
    std::vector<bool> have(n, false);
    for (const auto& [g, p] : gen_perms) {
      std::size_t axis = n;
      int sign = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (g[i] == 0) continue;
        if (axis != n || (g[i] != 1 && g[i] != -1))
          throw std::invalid_argument("lattice point actions take one permutation per unit vector");
        axis = i;
        sign = static_cast<int>(g[i]);
      }
      Perm q = sign == 1 ? p : detail::perm_inverse(p);
      if (have[axis] && axis_[axis] != q)
        throw std::invalid_argument("conflicting permutations for one lattice axis");
      axis_[axis] = std::move(q);
      have[axis] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (!have[i]) throw std::invalid_argument("missing permutation for a lattice axis");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (detail::perm_compose(axis_[i], axis_[j]) != detail::perm_compose(axis_[j], axis_[i]))
          throw std::invalid_argument("lattice axis permutations must commute");
  }

  Perm perm_of(const GroupCtx& G, const Elem& x) const {
    G.validate(x);
    if (!table_.empty()) return table_[static_cast<std::size_t>(index_.at(x))];
    Perm acc = detail::perm_identity(sigma_);
    for (std::size_t i = 0; i < axis_.size(); ++i)
      acc = detail::perm_compose(detail::perm_pow(axis_[i], x[i]), acc);
    return acc;
  }

  Kind kind_;
  GroupPtr G_;
  int sigma_ = 1;
  std::map<Elem, int> index_;
  std::vector<Perm> table_;
  std::vector<Perm> axis_;
};

class Cocycle {
 public:
  enum class Kind { Trivial, Theta, Table, SigmaDependent };

  static Cocycle trivial(Model model, int sigma_size) {
    Cocycle c;
    c.kind_ = Kind::Trivial;
    c.model_ = model;
    c.sigma_ = sigma_size;
    return c;
  }

  Kind kind() const { return kind_; }
  Model model() const { return model_; }
  int sigma_size() const { return sigma_; }

  std::string kind_name() const {
    switch (kind_) {
      case Kind::Trivial: return "trivial";
      case Kind::Theta: return "theta";
      case Kind::Table: return "table";
      case Kind::SigmaDependent: return "sigma_dependent";
    }
    return "trivial";
  }

  const std::vector<std::vector<double>>& theta() const { return theta_; }
  const std::map<std::pair<Elem, Elem>, Coefficient>& table() const { return table_; }
  const std::map<Elem, Coefficient>& coboundary_map() const { return b_; }
  bool lazy() const { return lazy_; }

  Coefficient value(const GroupCtx& G, const Elem& x, const Elem& y) const {
    switch (kind_) {
      case Kind::Trivial: return Coefficient::one(model_, sigma_);
      case Kind::Theta: return Coefficient::constant(model_, sigma_, theta_phase(x, y));
      case Kind::Table:
      case Kind::SigmaDependent: {
        if (lazy_) return coboundary_value(G, x, y);
        auto it = table_.find({x, y});
        if (it == table_.end())
          throw std::out_of_range("cocycle table has no entry at (" + elem_str(x) + ", " + elem_str(y) + ")");
        return it->second;
      }
    }
    return Coefficient::one(model_, sigma_);
  }

 private:
  friend Cocycle make_theta_cocycle(const GroupPtr&, const std::vector<std::vector<double>>&, Model, int);
  friend Cocycle make_table_cocycle(const GroupPtr&, Model, int,
                                    std::map<std::pair<Elem, Elem>, Coefficient>);
  friend Cocycle make_coboundary_cocycle(const GroupPtr&, const Action&, Model, int,
                                         const std::map<Elem, Coefficient>&);

  Cplx theta_phase(const Elem& x, const Elem& y) const {
    double s = 0.0;
    const std::size_t n = theta_.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        s += theta_[i][j] * (static_cast<double>(x[i]) * static_cast<double>(y[j]) -
                             static_cast<double>(x[j]) * static_cast<double>(y[i]));
    if (s == 0.0) return Cplx(1.0, 0.0);
    return std::polar(1.0, 2.0 * std::numbers::pi * std::fmod(s, 1.0));
  }

  Coefficient coboundary_value(const GroupCtx& G, const Elem& x, const Elem& y) const {
    return b_of(x) * action_.act(G, x, b_of(y)) * b_of(G.multiply(x, y)).adjoint();
  }

  Coefficient b_of(const Elem& x) const {
    auto it = b_.find(x);
    return it == b_.end() ? Coefficient::one(model_, sigma_) : it->second;
  }

  Kind kind_ = Kind::Trivial;
  Model model_ = Model::Scalar;
  int sigma_ = 1;
  std::vector<std::vector<double>> theta_;
  std::map<std::pair<Elem, Elem>, Coefficient> table_;
  bool lazy_ = false;
  std::map<Elem, Coefficient> b_;
  Action action_ = Action::trivial();
};

/// Theta must be square, match the lattice rank, and be exactly usable as
/// skew: |Theta_ij + Theta_ji| and |Theta_ii| up to 1e-12, else rejected.
/// Only the strictly upper triangle enters the phase.
inline Cocycle make_theta_cocycle(const GroupPtr& G, const std::vector<std::vector<double>>& theta,
                                  Model model = Model::Scalar, int sigma_size = 1) {
  for (const auto& f : G->factors())
    if (f.kind != GroupCtx::Kind::Lattice)
      throw std::invalid_argument("theta cocycles are defined on lattices");
  const std::size_t n = static_cast<std::size_t>(G->coords());
  if (theta.size() != n) throw std::invalid_argument("theta matrix rank does not match the lattice");
  for (const auto& row : theta)
    if (row.size() != n) throw std::invalid_argument("theta matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(theta[i][j] + theta[j][i]) > 1e-12)
        throw std::invalid_argument("theta matrix is not skew-symmetric");
  Cocycle c;
  c.kind_ = Cocycle::Kind::Theta;
  c.model_ = model;
  c.sigma_ = sigma_size;
  c.theta_ = theta;
  return c;
}

/// Complete table over all pairs of a finite group. Values are stored as
/// given; axiom violations surface in verify_axioms, not here.
inline Cocycle make_table_cocycle(const GroupPtr& G, Model model, int sigma_size,
                                  std::map<std::pair<Elem, Elem>, Coefficient> entries) {
  if (!G->finite()) throw std::invalid_argument("explicit cocycle tables need a finite group");
  const auto elems = G->elements();
  for (const auto& x : elems)
    for (const auto& y : elems)
      if (!entries.count({x, y}))
        throw std::out_of_range("cocycle table has no entry at (" + elem_str(x) + ", " + elem_str(y) + ")");
  for (const auto& [key, v] : entries) {
    if (v.model() != model || (model == Model::FiniteSpectrum && v.sigma_size() != sigma_size))
      throw std::invalid_argument("cocycle table entry has the wrong coefficient model");
  }
  Cocycle c;
  c.kind_ = model == Model::Scalar ? Cocycle::Kind::Table : Cocycle::Kind::SigmaDependent;
  c.model_ = model;
  c.sigma_ = sigma_size;
  c.table_ = std::move(entries);
  return c;
}

/**
 * omega(x, y) = b(x) . alpha_x[b(y)] . b(xy)^*.  Every supplied b value
 * must be unitary and b(e) = 1; elements absent from the map carry
 * b = 1, which keeps the table finitely describable on infinite groups
 * (there it is evaluated lazily). Finite groups get a materialized table.
 */
inline Cocycle make_coboundary_cocycle(const GroupPtr& G, const Action& action, Model model,
                                       int sigma_size, const std::map<Elem, Coefficient>& b) {
  for (const auto& [x, v] : b) {
    G->validate(x);
    if (v.model() != model || (model == Model::FiniteSpectrum && v.sigma_size() != sigma_size))
      throw std::invalid_argument("coboundary value has the wrong coefficient model");
    if (v.unitary_defect() > 1e-9)
      throw std::invalid_argument("coboundary values must be unitary, got defect at " + elem_str(x));
    if (G->is_identity(x) && sup_dist(v, Coefficient::one(model, sigma_size)) > 0.0)
      throw std::invalid_argument("coboundary must send the identity to 1");
  }
  Cocycle c;
  c.kind_ = model == Model::Scalar ? Cocycle::Kind::Table : Cocycle::Kind::SigmaDependent;
  c.model_ = model;
  c.sigma_ = sigma_size;
  c.b_ = b;
  c.action_ = action;
  if (!G->finite()) {
    c.lazy_ = true;
    return c;
  }
  const auto elems = G->elements();
  for (const auto& x : elems)
    for (const auto& y : elems) c.table_[{x, y}] = c.coboundary_value(*G, x, y);
  return c;
}

struct TwistedSystem {
  GroupPtr G;
  Model model = Model::Scalar;
  int sigma_size = 1;
  Action action = Action::trivial();
  Cocycle cocycle = Cocycle::trivial(Model::Scalar, 1);
  std::string name = "unnamed";

  Coefficient act(const Elem& x, const Coefficient& c) const { return action.act(*G, x, c); }
  SigmaPoint act_point(const Elem& x, const SigmaPoint& p) const { return action.act_point(*G, x, p); }
  Coefficient omega(const Elem& x, const Elem& y) const { return cocycle.value(*G, x, y); }
  Cplx omega_at(const Elem& x, const Elem& y, const SigmaPoint& p) const {
    return omega(x, y).eval(p);
  }
  Coefficient zero() const { return Coefficient::zero(model, sigma_size); }
  Coefficient one() const { return Coefficient::one(model, sigma_size); }
  Coefficient constant(Cplx v) const { return Coefficient::constant(model, sigma_size, v); }

  /// Spectrum points a three-variable view runs over. The standard model
  /// takes the background plus the given window of group points.
  std::vector<SigmaPoint> sigma_points(const std::vector<Elem>& window = {}) const {
    std::vector<SigmaPoint> out;
    switch (model) {
      case Model::Scalar: out.push_back(SigmaPoint::only()); break;
      case Model::FiniteSpectrum:
        for (int s = 0; s < sigma_size; ++s) out.push_back(SigmaPoint::at_index(s));
        break;
      case Model::Standard:
        out.push_back(SigmaPoint::background());
        for (const auto& y : window) out.push_back(SigmaPoint::at_point(y));
        break;
    }
    return out;
  }
};

inline TwistedSystem make_system(GroupPtr G, Model model, int sigma_size, Action action,
                                 Cocycle cocycle, std::string name = "unnamed") {
  if (!G) throw std::invalid_argument("system needs a group");
  if (model != Model::FiniteSpectrum) sigma_size = 1;
  if (model == Model::FiniteSpectrum && sigma_size < 1)
    throw std::invalid_argument("finite-spectrum model needs a nonempty spectrum");
  switch (model) {
    case Model::Scalar:
      if (action.kind() != Action::Kind::Trivial)
        throw std::invalid_argument("the scalar model admits only the trivial action");
      break;
    case Model::FiniteSpectrum:
      if (action.kind() == Action::Kind::Translation)
        throw std::invalid_argument("translation needs the standard model");
      if (action.kind() == Action::Kind::Point && action.sigma_size() != sigma_size)
        throw std::invalid_argument("action and system disagree on the spectrum size");
      break;
    case Model::Standard:
      if (action.kind() != Action::Kind::Translation)
        throw std::invalid_argument("the standard model carries the translation action");
      break;
  }
  if (cocycle.model() != model ||
      (model == Model::FiniteSpectrum && cocycle.sigma_size() != sigma_size))
    throw std::invalid_argument("cocycle values live in the wrong coefficient model");
  TwistedSystem sys;
  sys.G = std::move(G);
  sys.model = model;
  sys.sigma_size = sigma_size;
  sys.action = std::move(action);
  sys.cocycle = std::move(cocycle);
  sys.name = std::move(name);
  return sys;
}

struct SystemReport {
  std::string system_name;
  bool pass = true;
  std::vector<AxiomCheck> checks;

  const AxiomCheck& check(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return c;
    throw std::out_of_range("no axiom check named " + name);
  }
};

struct VerifyOptions {
  int trials = 10000;
  std::uint64_t seed = 1;
  int radius = 6;
};

/// Residual of the cocycle identity written with every value pulled back
/// through alpha_{s^{-1}}: both sides then live at a common spectrum
/// point, which is the form kernel composition consumes.
inline double cocycle_identity_form(const TwistedSystem& sys, const Elem& s, const Elem& m,
                                    const Elem& n, const Elem& r) {
  const auto& G = *sys.G;
  const Elem si = G.inverse(s);
  const Coefficient lhs =
      sys.act(si, sys.omega(m, n)) * sys.act(si, sys.omega(G.multiply(m, n), r));
  const Coefficient rhs =
      sys.act(G.multiply(si, m), sys.omega(n, r)) * sys.act(si, sys.omega(m, G.multiply(n, r)));
  return sup_dist(lhs, rhs);
}

inline SystemReport verify_axioms(const TwistedSystem& sys, const VerifyOptions& opts = {}) {
  const auto& G = *sys.G;
  const Elem e = G.identity();
  const auto pool = sample_pool(G, opts.radius);
  const std::size_t n = pool.size();
  const bool pairs_exhaustive = G.finite() && n * n <= 4'000'000;
  const bool triples_exhaustive = G.finite() && n * n * n <= 2'000'000;
  const bool quads_exhaustive = G.finite() && n * n * n * n <= 2'000'000;

  Rng rng(opts.seed);
  std::vector<Coefficient> probes;
  for (int k = 0; k < 3; ++k) {
    switch (sys.model) {
      case Model::Scalar: probes.push_back(Coefficient::scalar(rng.cplx())); break;
      case Model::FiniteSpectrum: {
        std::vector<Cplx> vals(static_cast<std::size_t>(sys.sigma_size));
        for (auto& v : vals) v = rng.cplx();
        probes.push_back(Coefficient::finite(std::move(vals)));
        break;
      }
      case Model::Standard: {
        ScalarFn corr;
        for (int j = 0; j < 3; ++j) corr[pick(rng, pool)] = rng.cplx();
        probes.push_back(Coefficient::standard(rng.cplx(), std::move(corr)));
        break;
      }
    }
  }

  struct Acc {
    std::string name;
    double worst = 0.0;
    std::vector<Elem> witness;
    void feed(double v, std::vector<Elem> w) {
      if (v > worst) {
        worst = v;
        witness = std::move(w);
      }
    }
  };
  Acc unit_left{"cocycle-unit-left"};
  Acc unit_right{"cocycle-unit-right"};
  Acc unitarity{"cocycle-unitarity"};
  Acc identity{"cocycle-identity"};
  Acc conjugated{"cocycle-identity-conjugated"};
  Acc hom{"action-homomorphism"};
  Acc mult{"action-multiplicativity"};
  Acc isometry{"action-isometry"};

  for (const auto& x : pool) {
    unit_left.feed(sup_dist(sys.omega(e, x), sys.one()), {x});
    unit_right.feed(sup_dist(sys.omega(x, e), sys.one()), {x});
  }

  auto pair_case = [&](const Elem& x, const Elem& y) {
    unitarity.feed(sys.omega(x, y).unitary_defect(), {x, y});
    const Elem xy = G.multiply(x, y);
    for (const auto& c : probes) {
      hom.feed(sup_dist(sys.act(x, sys.act(y, c)), sys.act(xy, c)), {x, y});
    }
    mult.feed(sup_dist(sys.act(x, probes[0] * probes[1]), sys.act(x, probes[0]) * sys.act(x, probes[1])),
              {x});
    isometry.feed(std::abs(sys.act(x, probes[2]).sup_norm() - probes[2].sup_norm()), {x});
  };

  auto triple_case = [&](const Elem& x, const Elem& y, const Elem& z) {
    const Coefficient lhs = sys.act(x, sys.omega(y, z)) * sys.omega(x, G.multiply(y, z));
    const Coefficient rhs = sys.omega(x, y) * sys.omega(G.multiply(x, y), z);
    identity.feed(sup_dist(lhs, rhs), {x, y, z});
  };

  auto quad_case = [&](const Elem& s, const Elem& m, const Elem& nn, const Elem& r) {
    conjugated.feed(cocycle_identity_form(sys, s, m, nn, r), {s, m, nn, r});
  };

  if (pairs_exhaustive) {
    for (const auto& x : pool)
      for (const auto& y : pool) pair_case(x, y);
  } else {
    for (int t = 0; t < opts.trials; ++t) pair_case(pick(rng, pool), pick(rng, pool));
  }
  if (triples_exhaustive) {
    for (const auto& x : pool)
      for (const auto& y : pool)
        for (const auto& z : pool) triple_case(x, y, z);
  } else {
    for (int t = 0; t < opts.trials; ++t)
      triple_case(pick(rng, pool), pick(rng, pool), pick(rng, pool));
  }
  if (quads_exhaustive) {
    for (const auto& s : pool)
      for (const auto& m : pool)
        for (const auto& nn : pool)
          for (const auto& r : pool) quad_case(s, m, nn, r);
  } else {
    for (int t = 0; t < opts.trials; ++t)
      quad_case(pick(rng, pool), pick(rng, pool), pick(rng, pool), pick(rng, pool));
  }

  SystemReport report;
  report.system_name = sys.name;
  const double tol = 1e-12;
  for (const Acc* a : {&unit_left, &unit_right, &unitarity, &identity, &conjugated, &hom, &mult, &isometry}) {
    AxiomCheck c;
    c.name = a->name;
    c.max_violation = a->worst;
    c.pass = a->worst <= tol;
    c.witness = a->witness;
    report.pass = report.pass && c.pass;
    report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace tca
