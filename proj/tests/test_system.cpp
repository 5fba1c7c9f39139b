#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "tca/builtins.hpp"
#include "tca/system.hpp"

using namespace tca;

namespace {

Cplx turn(double t) { return std::polar(1.0, 2.0 * std::numbers::pi * t); }

}  // namespace

TEST_CASE("coefficient algebra is exact in all three models") {
  const Coefficient a = Coefficient::scalar({1.0, 2.0});
  const Coefficient b = Coefficient::scalar({0.0, -1.0});
  CHECK((a * b).scalar_value() == Cplx(2.0, -1.0));
  CHECK((a + b).scalar_value() == Cplx(1.0, 1.0));
  CHECK(a.adjoint().scalar_value() == Cplx(1.0, -2.0));
  CHECK(a.sup_norm() == std::sqrt(5.0));

  const Coefficient u = Coefficient::finite({{1.0, 0.0}, {0.0, 2.0}});
  const Coefficient v = Coefficient::finite({{3.0, 0.0}, {0.0, -1.0}});
  CHECK((u * v).values() == std::vector<Cplx>{{3.0, 0.0}, {2.0, 0.0}});
  CHECK((u - v).values() == std::vector<Cplx>{{-2.0, 0.0}, {0.0, 3.0}});
  CHECK(u.sup_norm() == 2.0);
  CHECK(u.adjoint().values()[1] == Cplx(0.0, -2.0));

  const Coefficient f = Coefficient::standard(2.0, {{{0}, Cplx(1.0, 0.0)}, {{3}, Cplx(-5.0, 0.0)}});
  const Coefficient g = Coefficient::standard(1.0, {{{3}, Cplx(1.0, 0.0)}});
  const Coefficient fg = f * g;
  CHECK(fg.background() == Cplx(2.0, 0.0));
  CHECK(fg.eval(SigmaPoint::at_point({0})) == Cplx(3.0, 0.0));
  CHECK(fg.eval(SigmaPoint::at_point({3})) == Cplx(-6.0, 0.0));
  CHECK(fg.eval(SigmaPoint::at_point({7})) == Cplx(2.0, 0.0));
  CHECK(f.sup_norm() == 3.0);
  CHECK(Coefficient::standard(0.5, {{{1}, Cplx(-0.5, 0.0)}}).sup_norm() == 0.5);
}

TEST_CASE("standard-model corrections that cancel exactly are dropped") {
  const Coefficient f = Coefficient::standard(1.0, {{{2}, Cplx(3.0, 0.0)}});
  const Coefficient g = Coefficient::standard(1.0, {{{2}, Cplx(-3.0, 0.0)}});
  CHECK((f + g).correction().empty());
  CHECK((f - f).sup_norm() == 0.0);
  CHECK((f - f).is_zero());
}

TEST_CASE("coefficient model mismatches are rejected") {
  const Coefficient s = Coefficient::scalar(1.0);
  const Coefficient u = Coefficient::finite({1.0, 2.0});
  const Coefficient w = Coefficient::finite({1.0, 2.0, 3.0});
  CHECK_THROWS_AS(s + u, std::invalid_argument);
  CHECK_THROWS_AS(u * w, std::invalid_argument);
  CHECK_THROWS_AS(u.eval(SigmaPoint::at_index(5)), std::out_of_range);
  CHECK_THROWS_AS(u.eval(SigmaPoint::at_point({0})), std::out_of_range);
  CHECK(s.eval(SigmaPoint::only()) == Cplx(1.0, 0.0));
}

TEST_CASE("unitary defect measures the whole spectrum") {
  CHECK(Coefficient::scalar(turn(0.3)).unitary_defect() <= 1e-15);
  CHECK(Coefficient::scalar(0.5).unitary_defect() == 0.5);
  CHECK(Coefficient::finite({turn(0.1), Cplx(2.0, 0.0)}).unitary_defect() == 1.0);
  const Coefficient f = Coefficient::standard(1.0, {{{4}, Cplx(0.5, 0.0)}});
  CHECK(f.unitary_defect() == 0.5);
}

TEST_CASE("point actions compose along words") {
  auto sys = make_builtin("d3-point");
  // (2,1) factors as r.r.s, so its permutation is r after r after s.
  const std::vector<int> expected{0, 2, 1};
  for (int s = 0; s < 3; ++s)
    CHECK(sys.act_point({2, 1}, SigmaPoint::at_index(s)).index == expected[s]);
  // Identity acts trivially.
  for (int s = 0; s < 3; ++s)
    CHECK(sys.act_point({0, 0}, SigmaPoint::at_index(s)).index == s);
}

TEST_CASE("point action on coefficients evaluates at the pulled-back point") {
  auto sys = make_builtin("d3-point");
  const Coefficient c = Coefficient::finite({{1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}});
  for (const auto& x : sys.G->elements()) {
    const Coefficient moved = sys.act(x, c);
    for (int s = 0; s < 3; ++s) {
      const SigmaPoint back = sys.act_point(sys.G->inverse(x), SigmaPoint::at_index(s));
      CHECK(moved.eval(SigmaPoint::at_index(s)) == c.eval(back));
    }
  }
}

TEST_CASE("inconsistent generator permutations are rejected") {
  auto D3 = parse_group("D3");
  // A 2-cycle attached to the order-3 rotation cannot extend to D3.
  CHECK_THROWS_AS(Action::point(D3, 3, {{{1, 0}, {1, 0, 2}}, {{0, 1}, {1, 0, 2}}}),
                  std::invalid_argument);
  // The rotation alone does not generate D3.
  CHECK_THROWS_AS(Action::point(D3, 3, {{{1, 0}, {1, 2, 0}}}), std::invalid_argument);
  // Identity keys and non-bijections are rejected outright.
  CHECK_THROWS_AS(Action::point(D3, 3, {{{0, 0}, {0, 1, 2}}}), std::invalid_argument);
  CHECK_THROWS_AS(Action::point(D3, 3, {{{1, 0}, {1, 1, 0}}}), std::invalid_argument);
}

TEST_CASE("lattice point actions take commuting axis permutations") {
  auto Z2 = parse_group("Z^2");
  CHECK_THROWS_AS(Action::point(Z2, 3, {{{1, 0}, {1, 2, 0}}, {{0, 1}, {1, 0, 2}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Action::point(Z2, 3, {{{1, 0}, {1, 2, 0}}}), std::invalid_argument);

  Action a = Action::point(Z2, 4, {{{1, 0}, {1, 0, 3, 2}}, {{0, 1}, {2, 3, 0, 1}}});
  // x = (2, -1): axis permutations squared and inverted.
  const SigmaPoint p = a.act_point(*Z2, {2, -1}, SigmaPoint::at_index(0));
  const SigmaPoint q = a.act_point(*Z2, {2, -1}, SigmaPoint::at_index(1));
  CHECK(p.index == 2);
  CHECK(q.index == 3);
  // Homomorphism along a concrete pair.
  const SigmaPoint via = a.act_point(*Z2, {1, 1}, a.act_point(*Z2, {1, -2}, SigmaPoint::at_index(2)));
  const SigmaPoint direct = a.act_point(*Z2, {2, -1}, SigmaPoint::at_index(2));
  CHECK(via.index == direct.index);
}

TEST_CASE("translation shifts the correction support") {
  auto sys = make_builtin("z1-standard-cob");
  const Coefficient f = Coefficient::standard(5.0, {{{2}, Cplx(1.0, 0.0)}});
  const Coefficient moved = sys.act({3}, f);
  CHECK(moved.background() == Cplx(5.0, 0.0));
  CHECK(moved.eval(SigmaPoint::at_point({5})) == Cplx(6.0, 0.0));
  CHECK(moved.eval(SigmaPoint::at_point({2})) == Cplx(5.0, 0.0));
  CHECK(sys.act_point({3}, SigmaPoint::at_point({2})).point == Elem{5});
  CHECK(sys.act_point({3}, SigmaPoint::background()).kind == SigmaPoint::Kind::Background);
}

TEST_CASE("theta cocycles demand skew-symmetric lattice data") {
  auto Z2 = parse_group("Z^2");
  auto C4 = parse_group("C4");
  CHECK_THROWS_AS(make_theta_cocycle(Z2, {{0.0, 0.25}, {0.25, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_theta_cocycle(Z2, {{0.1, 0.25}, {-0.25, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_theta_cocycle(Z2, {{0.0, 0.25}}), std::invalid_argument);
  CHECK_THROWS_AS(make_theta_cocycle(C4, {{0.0}}), std::invalid_argument);
}

TEST_CASE("theta phases match the bilinear form and cancel exactly on inverses") {
  auto sys = make_builtin("z2-theta-quarter");
  CHECK(std::abs(sys.omega_at({1, 0}, {0, 1}, SigmaPoint::only()) - Cplx(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(sys.omega_at({0, 1}, {1, 0}, SigmaPoint::only()) - Cplx(0.0, -1.0)) < 1e-15);

  auto direct = [](double t, const Elem& x, const Elem& y) {
    return turn(t * (static_cast<double>(x[0]) * static_cast<double>(y[1]) -
                     static_cast<double>(x[1]) * static_cast<double>(y[0])));
  };
  for (const auto& name : {"z2-theta-quarter", "z2-theta-irrational"}) {
    auto s = make_builtin(name);
    const double t = s.cocycle.theta()[0][1];
    Rng rng(11);
    const auto pool = sample_pool(*s.G, 7);
    for (int i = 0; i < 200; ++i) {
      const Elem x = pick(rng, pool), y = pick(rng, pool);
      CHECK(std::abs(s.omega_at(x, y, SigmaPoint::only()) - direct(t, x, y)) < 1e-12);
      // Exact cancellation, not approximate: the phase sum vanishes termwise.
      CHECK(s.omega_at(x, s.G->inverse(x), SigmaPoint::only()) == Cplx(1.0, 0.0));
    }
  }
}

TEST_CASE("bicharacter table matches its closed form") {
  auto sys = make_builtin("c2xc4-bichar");
  CHECK(sys.omega_at({0, 1}, {1, 0}, SigmaPoint::only()) == Cplx(-1.0, 0.0));
  CHECK(sys.omega_at({1, 0}, {0, 1}, SigmaPoint::only()) == Cplx(1.0, 0.0));
  CHECK(sys.omega_at({0, 3}, {1, 2}, SigmaPoint::only()) == Cplx(-1.0, 0.0));
  for (const auto& x : sys.G->elements())
    for (const auto& y : sys.G->elements()) {
      const double expect = (x[1] * y[0]) % 2 == 0 ? 1.0 : -1.0;
      CHECK(sys.omega_at(x, y, SigmaPoint::only()) == Cplx(expect, 0.0));
    }
}

TEST_CASE("every builtin system passes the axiom verifier") {
  for (const auto& name : builtin_names()) {
    VerifyOptions opts;
    opts.trials = 2000;
    opts.seed = 5;
    const SystemReport rep = verify_axioms(make_builtin(name), opts);
    INFO(name);
    for (const auto& c : rep.checks) {
      INFO(c.name << " violation " << c.max_violation << " at " << witness_str(c.witness));
      CHECK(c.pass);
    }
    CHECK(rep.pass);
  }
}

TEST_CASE("sigma-dependent cocycles really vary over the spectrum") {
  auto sys = make_builtin("c4-sigma-flip");
  double spread = 0.0;
  for (const auto& x : sys.G->elements())
    for (const auto& y : sys.G->elements()) {
      const Coefficient w = sys.omega(x, y);
      spread = std::max(spread, std::abs(w.values()[0] - w.values()[1]));
    }
  CHECK(spread > 0.1);
}

TEST_CASE("lazy coboundary cocycles on infinite groups satisfy the quadruple identity") {
  auto sys = make_builtin("z1-standard-cob");
  CHECK(sys.cocycle.lazy());
  // A pair with every factor nontrivial.
  const Coefficient w = sys.omega({1}, {1});
  CHECK(w.unitary_defect() < 1e-12);
  CHECK(sup_dist(w, sys.one()) > 0.1);
  CHECK(cocycle_identity_form(sys, {3}, {1}, {-1}, {2}) < 1e-12);
  CHECK(cocycle_identity_form(sys, {-2}, {2}, {1}, {-3}) < 1e-12);
}

TEST_CASE("corrupted cocycle tables are caught with a witness") {
  auto C4 = parse_group("C4");
  std::map<std::pair<Elem, Elem>, Coefficient> entries;
  for (const auto& x : C4->elements())
    for (const auto& y : C4->elements()) entries[{x, y}] = Coefficient::scalar(1.0);

  SECTION("sign flip breaks the cocycle identity") {
    entries[{{1}, {1}}] = Coefficient::scalar(-1.0);
    auto sys = make_system(C4, Model::Scalar, 1, Action::trivial(),
                           make_table_cocycle(C4, Model::Scalar, 1, entries), "corrupt");
    const SystemReport rep = verify_axioms(sys);
    CHECK_FALSE(rep.pass);
    const auto& c = rep.check("cocycle-identity");
    CHECK_FALSE(c.pass);
    CHECK(c.max_violation == Catch::Approx(2.0));
    CHECK_FALSE(c.witness.empty());
    CHECK(rep.check("cocycle-unitarity").pass);
  }
  SECTION("shrunk entry breaks unitarity") {
    entries[{{2}, {3}}] = Coefficient::scalar(0.5);
    auto sys = make_system(C4, Model::Scalar, 1, Action::trivial(),
                           make_table_cocycle(C4, Model::Scalar, 1, entries), "corrupt");
    const SystemReport rep = verify_axioms(sys);
    CHECK_FALSE(rep.pass);
    CHECK(rep.check("cocycle-unitarity").max_violation == Catch::Approx(0.5));
  }
  SECTION("broken unit row is reported by side") {
    entries[{{0}, {2}}] = Coefficient::scalar(turn(0.25));
    auto sys = make_system(C4, Model::Scalar, 1, Action::trivial(),
                           make_table_cocycle(C4, Model::Scalar, 1, entries), "corrupt");
    const SystemReport rep = verify_axioms(sys);
    CHECK_FALSE(rep.check("cocycle-unit-left").pass);
    CHECK(rep.check("cocycle-unit-left").witness == std::vector<Elem>{{2}});
  }
}

TEST_CASE("table cocycles must be complete and finite") {
  auto C4 = parse_group("C4");
  std::map<std::pair<Elem, Elem>, Coefficient> entries;
  for (const auto& x : C4->elements())
    for (const auto& y : C4->elements()) entries[{x, y}] = Coefficient::scalar(1.0);
  entries.erase({{2}, {3}});
  CHECK_THROWS_AS(make_table_cocycle(C4, Model::Scalar, 1, entries), std::out_of_range);
  auto Z1 = parse_group("Z^1");
  CHECK_THROWS_AS(make_table_cocycle(Z1, Model::Scalar, 1, {}), std::invalid_argument);
}

TEST_CASE("coboundary data is checked at construction") {
  auto C4 = parse_group("C4");
  std::map<Elem, Coefficient> bad_unit{{{1}, Coefficient::scalar(0.5)}};
  CHECK_THROWS_AS(make_coboundary_cocycle(C4, Action::trivial(), Model::Scalar, 1, bad_unit),
                  std::invalid_argument);
  std::map<Elem, Coefficient> bad_e{{{0}, Coefficient::scalar(-1.0)}};
  CHECK_THROWS_AS(make_coboundary_cocycle(C4, Action::trivial(), Model::Scalar, 1, bad_e),
                  std::invalid_argument);
  std::map<Elem, Coefficient> wrong_model{{{1}, Coefficient::finite({1.0, 1.0})}};
  CHECK_THROWS_AS(make_coboundary_cocycle(C4, Action::trivial(), Model::Scalar, 1, wrong_model),
                  std::invalid_argument);
}

TEST_CASE("system assembly rejects mismatched pieces") {
  auto C4 = parse_group("C4");
  auto Z1 = parse_group("Z^1");
  Action flip = Action::point(C4, 2, {{{1}, {1, 0}}});
  CHECK_THROWS_AS(make_system(C4, Model::Scalar, 1, flip, Cocycle::trivial(Model::Scalar, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_system(Z1, Model::Standard, 1, Action::trivial(),
                              Cocycle::trivial(Model::Standard, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_system(C4, Model::FiniteSpectrum, 3, flip,
                              Cocycle::trivial(Model::FiniteSpectrum, 3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_system(C4, Model::FiniteSpectrum, 2, flip, Cocycle::trivial(Model::Scalar, 1)),
                  std::invalid_argument);
}

TEST_CASE("unknown builtin names are rejected") {
  CHECK_THROWS_AS(make_builtin("z9-mystery"), std::invalid_argument);
}
