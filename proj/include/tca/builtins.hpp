#pragma once

/**
 * Named example systems covering every model/action/cocycle combination.
 * All data is fixed, so every build sees identical systems.
 *
 *   z1-trivial           Z, scalar, untwisted
 *   z2-theta-quarter     Z^2, scalar, theta phase with Theta_12 = 1/4
 *   z2-theta-irrational  Z^2, scalar, theta phase with Theta_12 = sqrt(2)/4
 *   c6-phase             C6, scalar, coboundary table
 *   d3-phase             D3, scalar, coboundary table
 *   heis3-phase          Heis3, scalar, coboundary table
 *   c2xc4-bichar         C2 x C4, scalar, bicharacter table (-1)^{a2 b1}
 *   c4-sigma-flip        C4 permuting a two-point spectrum, coboundary
 *   d3-point             D3 permuting a three-point spectrum, coboundary
 *   z1-standard-cob      Z, standard model, lazy coboundary
 *   z2-standard-theta    Z^2, standard model, theta phase with Theta_12 = 1/4
 */

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "tca/system.hpp"

namespace tca {

inline std::vector<std::string> builtin_names() {
  return {"z1-trivial",   "z2-theta-quarter", "z2-theta-irrational", "c6-phase",
          "d3-phase",     "heis3-phase",      "c2xc4-bichar",        "c4-sigma-flip",
          "d3-point",     "z1-standard-cob",  "z2-standard-theta"};
}

namespace detail {

inline Cplx turn(double t) { return std::polar(1.0, 2.0 * std::numbers::pi * t); }

inline std::map<Elem, Coefficient> scalar_b(const std::map<Elem, double>& turns) {
  std::map<Elem, Coefficient> b;
  for (const auto& [x, t] : turns) b[x] = Coefficient::scalar(turn(t));
  return b;
}

}  // namespace detail

inline TwistedSystem make_builtin(const std::string& name) {
  using detail::scalar_b;
  using detail::turn;

  if (name == "z1-trivial") {
    auto G = parse_group("Z^1");
    return make_system(G, Model::Scalar, 1, Action::trivial(),
                       Cocycle::trivial(Model::Scalar, 1), name);
  }
  if (name == "z2-theta-quarter" || name == "z2-theta-irrational") {
    auto G = parse_group("Z^2");
    const double t = name == "z2-theta-quarter" ? 0.25 : std::sqrt(2.0) / 4.0;
    return make_system(G, Model::Scalar, 1, Action::trivial(),
                       make_theta_cocycle(G, {{0.0, t}, {-t, 0.0}}), name);
  }
  if (name == "c6-phase") {
    auto G = parse_group("C6");
    auto b = scalar_b({{{1}, 0.17}, {{2}, 0.42}, {{3}, 0.05}, {{4}, 0.63}, {{5}, 0.88}});
    return make_system(G, Model::Scalar, 1, Action::trivial(),
                       make_coboundary_cocycle(G, Action::trivial(), Model::Scalar, 1, b), name);
  }
  if (name == "d3-phase") {
    auto G = parse_group("D3");
    auto b = scalar_b(
        {{{1, 0}, 0.30}, {{2, 0}, 0.71}, {{0, 1}, 0.25}, {{1, 1}, 0.09}, {{2, 1}, 0.54}});
    return make_system(G, Model::Scalar, 1, Action::trivial(),
                       make_coboundary_cocycle(G, Action::trivial(), Model::Scalar, 1, b), name);
  }
  if (name == "heis3-phase") {
    auto G = parse_group("Heis3");
    auto b = scalar_b({{{1, 0, 0}, 0.20},
                       {{0, 1, 0}, 0.55},
                       {{0, 0, 1}, 0.90},
                       {{1, 1, 0}, 0.13},
                       {{2, 0, 1}, 0.37},
                       {{1, 2, 2}, 0.68}});
    return make_system(G, Model::Scalar, 1, Action::trivial(),
                       make_coboundary_cocycle(G, Action::trivial(), Model::Scalar, 1, b), name);
  }
  if (name == "c2xc4-bichar") {
    auto G = parse_group("C2xC4");
    std::map<std::pair<Elem, Elem>, Coefficient> entries;
    for (const auto& x : G->elements())
      for (const auto& y : G->elements()) {
        const double sign = (x[1] * y[0]) % 2 == 0 ? 1.0 : -1.0;
        entries[{x, y}] = Coefficient::scalar(sign);
      }
    return make_system(G, Model::Scalar, 1, Action::trivial(),
                       make_table_cocycle(G, Model::Scalar, 1, std::move(entries)), name);
  }
  if (name == "c4-sigma-flip") {
    auto G = parse_group("C4");
    Action a = Action::point(G, 2, {{{1}, {1, 0}}});
    std::map<Elem, Coefficient> b;
    b[{1}] = Coefficient::finite({Cplx(0.0, 1.0), Cplx(1.0, 0.0)});
    b[{2}] = Coefficient::finite({turn(0.35), turn(0.80)});
    b[{3}] = Coefficient::finite({Cplx(1.0, 0.0), Cplx(-1.0, 0.0)});
    return make_system(G, Model::FiniteSpectrum, 2, a,
                       make_coboundary_cocycle(G, a, Model::FiniteSpectrum, 2, b), name);
  }
  if (name == "d3-point") {
    auto G = parse_group("D3");
    Action a = Action::point(G, 3, {{{1, 0}, {1, 2, 0}}, {{0, 1}, {1, 0, 2}}});
    std::map<Elem, Coefficient> b;
    b[{1, 0}] = Coefficient::finite({Cplx(1.0, 0.0), Cplx(0.0, 1.0), Cplx(-1.0, 0.0)});
    b[{0, 1}] = Coefficient::finite({Cplx(0.0, 1.0), turn(0.15), Cplx(1.0, 0.0)});
    b[{2, 1}] = Coefficient::finite({turn(0.44), Cplx(1.0, 0.0), turn(0.71)});
    return make_system(G, Model::FiniteSpectrum, 3, a,
                       make_coboundary_cocycle(G, a, Model::FiniteSpectrum, 3, b), name);
  }
  if (name == "z1-standard-cob") {
    auto G = parse_group("Z^1");
    Action a = Action::translation(G);
    std::map<Elem, Coefficient> b;
    b[{1}] = Coefficient::standard(1.0, {{{0}, turn(1.0 / 3.0) - 1.0}});
    b[{-1}] = Coefficient::standard(1.0, {{{1}, Cplx(0.0, 1.0) - 1.0}});
    b[{2}] = Coefficient::standard(1.0, {{{-3}, -2.0}, {{0}, turn(0.2) - 1.0}});
    return make_system(G, Model::Standard, 1, a,
                       make_coboundary_cocycle(G, a, Model::Standard, 1, b), name);
  }
  if (name == "z2-standard-theta") {
    auto G = parse_group("Z^2");
    return make_system(G, Model::Standard, 1, Action::translation(G),
                       make_theta_cocycle(G, {{0.0, 0.25}, {-0.25, 0.0}}, Model::Standard, 1),
                       name);
  }
  throw std::invalid_argument("unknown builtin system: " + name);
}

}  // namespace tca
