#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "tca/builtins.hpp"
#include "tca/crossed.hpp"

using namespace tca;

namespace {

Coefficient random_coeff(const TwistedSystem& sys, Rng& rng, const std::vector<Elem>& pool) {
  switch (sys.model) {
    case Model::Scalar: return Coefficient::scalar(rng.cplx());
    case Model::FiniteSpectrum: {
      std::vector<Cplx> vals(static_cast<std::size_t>(sys.sigma_size));
      for (auto& v : vals) v = rng.cplx();
      return Coefficient::finite(std::move(vals));
    }
    case Model::Standard: {
      ScalarFn corr;
      for (int j = 0; j < 2; ++j) corr[pick(rng, pool)] = rng.cplx();
      return Coefficient::standard(rng.cplx(), std::move(corr));
    }
  }
  return Coefficient::scalar(0.0);
}

CrossedElement random_crossed(const TwistedSystem& sys, Rng& rng, const std::vector<Elem>& pool,
                              int support) {
  CrossedElement f;
  for (int i = 0; i < support; ++i)
    crossed_add_term(f, pick(rng, pool), random_coeff(sys, rng, pool));
  return f;
}

}  // namespace

TEST_CASE("the unit term is a two-sided identity in every builtin") {
  for (const auto& name : builtin_names()) {
    auto sys = make_builtin(name);
    const auto pool = sample_pool(*sys.G, 4);
    const CrossedElement e = crossed_identity(sys);
    Rng rng(21);
    for (int t = 0; t < 20; ++t) {
      const CrossedElement f = random_crossed(sys, rng, pool, 4);
      INFO(name);
      CHECK(crossed_dist(sys, crossed_product(sys, f, e), f) < 1e-12);
      CHECK(crossed_dist(sys, crossed_product(sys, e, f), f) < 1e-12);
    }
  }
}

TEST_CASE("twisted convolution is associative in every builtin") {
  for (const auto& name : builtin_names()) {
    auto sys = make_builtin(name);
    const auto pool = sample_pool(*sys.G, 4);
    Rng rng(22);
    for (int t = 0; t < 20; ++t) {
      const CrossedElement f = random_crossed(sys, rng, pool, 4);
      const CrossedElement g = random_crossed(sys, rng, pool, 4);
      const CrossedElement h = random_crossed(sys, rng, pool, 4);
      const CrossedElement lhs = crossed_product(sys, crossed_product(sys, f, g), h);
      const CrossedElement rhs = crossed_product(sys, f, crossed_product(sys, g, h));
      INFO(name << " trial " << t);
      CHECK(crossed_dist(sys, lhs, rhs) < 1e-12);
    }
  }
}

TEST_CASE("the involution is an anti-multiplicative conjugate-linear period two map") {
  for (const auto& name : builtin_names()) {
    auto sys = make_builtin(name);
    const auto pool = sample_pool(*sys.G, 4);
    Rng rng(23);
    for (int t = 0; t < 20; ++t) {
      const CrossedElement f = random_crossed(sys, rng, pool, 4);
      const CrossedElement g = random_crossed(sys, rng, pool, 4);
      INFO(name << " trial " << t);
      CHECK(crossed_dist(sys, crossed_involution(sys, crossed_involution(sys, f)), f) < 1e-12);
      const CrossedElement lhs = crossed_involution(sys, crossed_product(sys, f, g));
      const CrossedElement rhs =
          crossed_product(sys, crossed_involution(sys, g), crossed_involution(sys, f));
      CHECK(crossed_dist(sys, lhs, rhs) < 1e-12);
      const Cplx lam(0.3, -1.7);
      CHECK(crossed_dist(sys, crossed_involution(sys, crossed_scale(f, lam)),
                         crossed_scale(crossed_involution(sys, f), std::conj(lam))) < 1e-12);
    }
  }
}

TEST_CASE("involution preserves the magnitude at mirrored points") {
  auto sys = make_builtin("d3-phase");
  Rng rng(24);
  const auto pool = sample_pool(*sys.G, 4);
  for (int t = 0; t < 10; ++t) {
    const CrossedElement f = random_crossed(sys, rng, pool, 4);
    const CrossedElement fs = crossed_involution(sys, f);
    for (const auto& [x, c] : f.terms) {
      auto it = fs.terms.find(sys.G->inverse(x));
      REQUIRE(it != fs.terms.end());
      CHECK(it->second.sup_norm() == Catch::Approx(c.sup_norm()).margin(1e-13));
    }
  }
}

TEST_CASE("quarter phase probe squares to the frozen three-point element") {
  auto sys = make_builtin("z2-theta-quarter");
  CrossedElement f;
  crossed_add_term(f, {1, 0}, sys.one());
  crossed_add_term(f, {0, 1}, sys.one());
  const CrossedElement h = crossed_product(sys, crossed_involution(sys, f), f);

  REQUIRE(h.support_size() == 3);
  CHECK(eval_at(h, {0, 0}, SigmaPoint::only()) == Cplx(2.0, 0.0));
  CHECK(std::abs(eval_at(h, {-1, 1}, SigmaPoint::only()) - Cplx(0.0, -1.0)) < 1e-14);
  CHECK(std::abs(eval_at(h, {1, -1}, SigmaPoint::only()) - Cplx(0.0, 1.0)) < 1e-14);
  CHECK(crossed_dist(sys, crossed_involution(sys, h), h) < 1e-14);
  CHECK(crossed_norm(sys, h, make_norm(*sys.G, NormSpec::Kind::L1)) == 4.0);
}

TEST_CASE("powers of the shifted doubling element have exact norms") {
  auto sys = make_builtin("z1-trivial");
  CrossedElement f;
  crossed_add_term(f, {0}, sys.constant(2.0));
  crossed_add_term(f, {1}, sys.constant(1.0));
  const NormSpec l1 = make_norm(*sys.G, NormSpec::Kind::L1);

  double expect = 1.0;
  for (unsigned n = 1; n <= 12; ++n) {
    expect *= 3.0;
    CHECK(crossed_norm(sys, crossed_power(sys, f, n), l1) == expect);
  }

  const CrossedElement f3 = crossed_power(sys, f, 3);
  CHECK(eval_at(f3, {0}, SigmaPoint::only()) == Cplx(8.0, 0.0));
  CHECK(eval_at(f3, {1}, SigmaPoint::only()) == Cplx(12.0, 0.0));
  CHECK(eval_at(f3, {2}, SigmaPoint::only()) == Cplx(6.0, 0.0));
  CHECK(eval_at(f3, {3}, SigmaPoint::only()) == Cplx(1.0, 0.0));
}

TEST_CASE("untwisted scalar convolution agrees with the plain convolution routine") {
  auto sys = make_builtin("z1-trivial");
  Rng rng(25);
  const auto pool = sample_pool(*sys.G, 5);
  const CrossedElement f = random_crossed(sys, rng, pool, 5);
  const CrossedElement g = random_crossed(sys, rng, pool, 5);
  ScalarFn sf, sg;
  for (const auto& [x, c] : f.terms) sf[x] = c.scalar_value();
  for (const auto& [x, c] : g.terms) sg[x] = c.scalar_value();
  const ScalarFn plain = convolve(*sys.G, sf, sg);
  const CrossedElement twisted = crossed_product(sys, f, g);
  REQUIRE(plain.size() == twisted.support_size());
  for (const auto& [x, v] : plain) CHECK(eval_at(twisted, x, SigmaPoint::only()) == v);
}

TEST_CASE("point evaluations give a second route to product and involution") {
  for (const auto& name : builtin_names()) {
    auto sys = make_builtin(name);
    const auto pool = sample_pool(*sys.G, 3);
    const auto window = sample_pool(*sys.G, 2);
    const auto points = sys.sigma_points(window);
    Rng rng(26);
    for (int t = 0; t < 8; ++t) {
      const CrossedElement f = random_crossed(sys, rng, pool, 3);
      const CrossedElement g = random_crossed(sys, rng, pool, 3);
      const CrossedElement fg = crossed_product(sys, f, g);
      const CrossedElement fs = crossed_involution(sys, f);
      for (int i = 0; i < 5; ++i) {
        const Elem x = pick(rng, pool);
        const Elem xx = sys.G->multiply(x, pick(rng, pool));
        for (const auto& p : points) {
          INFO(name << " at " << elem_str(xx) << "; " << p.str());
          CHECK(std::abs(eval_at(fg, xx, p) - pointwise_product(sys, f, g, xx, p)) < 1e-12);
          CHECK(std::abs(eval_at(fs, xx, p) - pointwise_involution(sys, f, xx, p)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("twists and noncommutative groups both break commutativity") {
  auto bichar = make_builtin("c2xc4-bichar");
  const CrossedElement a = crossed_delta(bichar, {0, 1});
  const CrossedElement b = crossed_delta(bichar, {1, 0});
  const CrossedElement ab = crossed_product(bichar, a, b);
  CHECK(std::abs(eval_at(ab, {1, 1}, SigmaPoint::only()) - Cplx(-1.0, 0.0)) < 1e-14);
  CHECK(crossed_dist(bichar, ab, crossed_product(bichar, b, a)) == Catch::Approx(2.0));

  auto d3 = make_builtin("d3-point");
  const CrossedElement r = crossed_delta(d3, {1, 0});
  const CrossedElement s = crossed_delta(d3, {0, 1});
  CHECK(crossed_dist(d3, crossed_product(d3, r, s), crossed_product(d3, s, r)) > 0.5);
}

TEST_CASE("convolution is bilinear") {
  auto sys = make_builtin("d3-phase");
  Rng rng(27);
  const auto pool = sample_pool(*sys.G, 2);
  const CrossedElement f = random_crossed(sys, rng, pool, 4);
  const CrossedElement g = random_crossed(sys, rng, pool, 4);
  const CrossedElement h = random_crossed(sys, rng, pool, 4);
  const Cplx lam(0.4, 2.0);
  const CrossedElement lhs = crossed_product(sys, f, crossed_sum(g, crossed_scale(h, lam)));
  const CrossedElement rhs =
      crossed_sum(crossed_product(sys, f, g), crossed_scale(crossed_product(sys, f, h), lam));
  CHECK(crossed_dist(sys, lhs, rhs) < 1e-12);
}

TEST_CASE("oversized convolutions are refused before any work") {
  auto sys = make_builtin("z1-trivial");
  CrossedElement f;
  for (std::int64_t i = 0; i < 1500; ++i) crossed_add_term(f, {i}, sys.one());
  CHECK_THROWS_AS(crossed_product(sys, f, f), std::length_error);
}

TEST_CASE("crossed norms match the scalar view bit for bit") {
  auto sys = make_builtin("z2-theta-quarter");
  Rng rng(28);
  const auto pool = sample_pool(*sys.G, 4);
  const CrossedElement f = random_crossed(sys, rng, pool, 6);
  ScalarFn sf;
  for (const auto& [x, c] : f.terms) sf[x] = c.scalar_value();
  for (const auto& norm :
       {make_norm(*sys.G, NormSpec::Kind::L1), make_norm(*sys.G, NormSpec::Kind::L1Weighted, Weight::poly(2.0)),
        make_norm(*sys.G, NormSpec::Kind::LInfWeighted, Weight::exponential(0.25))}) {
    CHECK(crossed_norm(sys, f, norm) == fn_norm(*sys.G, sf, norm));
  }
}

TEST_CASE("delta terms validate their inputs") {
  auto sys = make_builtin("c4-sigma-flip");
  CHECK_THROWS_AS(crossed_delta(sys, {9}, sys.one()), std::out_of_range);
  CHECK_THROWS_AS(crossed_delta(sys, {1}, Coefficient::scalar(1.0)), std::invalid_argument);
  CHECK_THROWS_AS(crossed_delta(sys, {1}, Coefficient::finite({1.0, 1.0, 1.0})),
                  std::invalid_argument);
}

TEST_CASE("repeated squaring records norms level by level") {
  SECTION("the unit is a fixed point with unit norms") {
    auto sys = make_builtin("c6-phase");
    const NormSpec l1 = make_norm(*sys.G, NormSpec::Kind::L1);
    const PowerTrace tr = power_trace(sys, crossed_identity(sys), 5, l1);
    CHECK(tr.levels_computed == 5);
    CHECK_FALSE(tr.budget_exceeded);
    REQUIRE(tr.norms.size() == 6);
    for (double n : tr.norms) CHECK(n == 1.0);
    CHECK(crossed_dist(sys, tr.value, crossed_identity(sys)) == 0.0);
  }

  SECTION("one squaring of the symmetric walk is the binomial row") {
    auto sys = make_builtin("z1-trivial");
    const NormSpec l1 = make_norm(*sys.G, NormSpec::Kind::L1);
    CrossedElement f = crossed_sum(crossed_delta(sys, {-1}), crossed_delta(sys, {1}));
    const PowerTrace tr = power_trace(sys, f, 1, l1);
    CrossedElement want = crossed_delta(sys, {-2});
    want = crossed_sum(want, crossed_delta(sys, {0}, 2.0));
    want = crossed_sum(want, crossed_delta(sys, {2}));
    CHECK(crossed_dist(sys, tr.value, want) == 0.0);
    CHECK(tr.norms[0] == 2.0);
    CHECK(tr.norms[1] == 4.0);
  }

  SECTION("powers stay inside the Minkowski sums of the support") {
    auto sys = make_builtin("z2-theta-quarter");
    CrossedElement f = crossed_sum(crossed_delta(sys, {1, 0}), crossed_delta(sys, {0, 1}));
    f = crossed_sum(f, crossed_delta(sys, {0, 0}, Cplx(0.5, 0.5)));
    const NormSpec l1 = make_norm(*sys.G, NormSpec::Kind::L1);
    const PowerTrace tr = power_trace(sys, f, 3, l1);
    CHECK(tr.levels_computed == 3);
    for (const auto& [x, c] : tr.value.terms) CHECK(sys.G->word_length(x) <= 8);
  }

  SECTION("an exhausted budget flags a partial result at the largest level") {
    auto sys = make_builtin("z1-trivial");
    const NormSpec l1 = make_norm(*sys.G, NormSpec::Kind::L1);
    CrossedElement f;
    for (std::int64_t i = 0; i < 6; ++i) crossed_add_term(f, {i}, sys.one());
    const PowerTrace tr = power_trace(sys, f, 10, l1, 40);
    CHECK(tr.budget_exceeded);
    CHECK(tr.levels_computed == 3);  // supports 6, 11, 21, 41; 41 > 40 stops the chain
    CHECK(tr.norms.size() == 4);
    CHECK(tr.value.support_size() == 41);
  }
}

TEST_CASE("the tabulated two-variable view agrees with the coefficient route") {
  for (const auto& name : {"c4-sigma-flip", "d3-point", "z1-standard-cob", "z2-standard-theta"}) {
    auto sys = make_builtin(name);
    const auto pool = sample_pool(*sys.G, 3);
    Rng rng(29);
    const CrossedElement f = random_crossed(sys, rng, pool, 5);
    const ThreeVariableView view = scalar_case_abelian(sys, f);
    REQUIRE_FALSE(view.points.empty());
    for (const auto& [x, row] : view.table) {
      REQUIRE(row.size() == view.points.size());
      for (std::size_t i = 0; i < row.size(); ++i) {
        INFO(name << " at " << elem_str(x) << " point " << view.points[i].str());
        CHECK(row[i] == eval_at(f, x, view.points[i]));
      }
    }
  }
  auto scalar_sys = make_builtin("c6-phase");
  CHECK_THROWS_AS(scalar_case_abelian(scalar_sys, crossed_identity(scalar_sys)),
                  std::invalid_argument);
}
