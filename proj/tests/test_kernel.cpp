#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "tca/builtins.hpp"
#include "tca/kernel.hpp"

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

/// Random kernel with both window entries and tails, generally not covariant.
KernelElement random_kernel(const TwistedSystem& sys, Rng& rng, const std::vector<Elem>& pool,
                            int bands, int window_pts) {
  KernelElement K;
  for (int i = 0; i < bands; ++i) {
    Diagonal d;
    d.tail = random_coeff(sys, rng, pool);
    for (int j = 0; j < window_pts; ++j)
      d.window[pick(rng, pool)] = random_coeff(sys, rng, pool);
    K.diags[pick(rng, pool)] = std::move(d);
  }
  return K;
}

/// (K . L)(x, y) summed the slow way over the whole finite group.
Coefficient brute_compose_value(const TwistedSystem& sys, const KernelElement& K,
                                const KernelElement& L, const Elem& x, const Elem& y) {
  const auto& G = *sys.G;
  const Elem xi = G.inverse(x);
  Coefficient acc = sys.zero();
  for (const Elem& z : G.elements()) {
    const Elem a = G.multiply(x, G.inverse(z));
    const Elem b = G.multiply(z, G.inverse(y));
    acc = acc + kernel_value(sys, K, x, z) * kernel_value(sys, L, z, y) *
                    sys.act(xi, sys.omega(a, b));
  }
  return acc;
}

Coefficient brute_involve_value(const TwistedSystem& sys, const KernelElement& K, const Elem& x,
                                const Elem& y) {
  const auto& G = *sys.G;
  const Elem a = G.multiply(x, G.inverse(y));
  return sys.act(G.inverse(x), sys.omega(a, G.inverse(a)).adjoint()) *
         kernel_value(sys, K, y, x).adjoint();
}

double brute_covariance_residual(const TwistedSystem& sys, const KernelElement& K) {
  const auto& G = *sys.G;
  double worst = 0.0;
  for (const auto& [a, d] : K.diags)
    for (const Elem& x : G.elements())
      for (const Elem& z : G.elements()) {
        const Coefficient lhs = diagonal_value(sys, d, G.multiply(x, z));
        const Coefficient rhs = sys.act(G.inverse(z), diagonal_value(sys, d, x));
        worst = std::max(worst, sup_dist(lhs, rhs));
      }
  return worst;
}

}  // namespace

TEST_CASE("gamma carries products, stars, and norms to kernels to the last bit") {
  for (const auto& name : builtin_names()) {
    auto sys = make_builtin(name);
    const auto pool = sample_pool(*sys.G, 3);
    const NormSpec l1 = make_norm(*sys.G, NormSpec::Kind::L1);
    const NormSpec l1w = make_norm(*sys.G, NormSpec::Kind::L1Weighted, Weight::poly(2.0));
    Rng rng(31);
    for (int t = 0; t < 10; ++t) {
      const CrossedElement f = random_crossed(sys, rng, pool, 4);
      const CrossedElement g = random_crossed(sys, rng, pool, 4);
      INFO(name << " trial " << t);
      CHECK(kernel_dist(sys, gamma(sys, crossed_product(sys, f, g)),
                        compose(sys, gamma(sys, f), gamma(sys, g))) == 0.0);
      CHECK(kernel_dist(sys, gamma(sys, crossed_involution(sys, f)),
                        involve_kernel(sys, gamma(sys, f))) == 0.0);
      CHECK(kernel_norm(sys, gamma(sys, f), l1) == crossed_norm(sys, f, l1));
      CHECK(kernel_norm(sys, gamma(sys, f), l1w) == crossed_norm(sys, f, l1w));
    }
  }
}

TEST_CASE("the covariant image inverts exactly in both directions") {
  for (const auto& name : builtin_names()) {
    auto sys = make_builtin(name);
    const auto pool = sample_pool(*sys.G, 3);
    Rng rng(32);
    for (int t = 0; t < 10; ++t) {
      const CrossedElement f = random_crossed(sys, rng, pool, 5);
      const KernelElement K = gamma(sys, f);
      const CrossedElement back = gamma_inverse(sys, K);
      INFO(name << " trial " << t);
      CHECK(back.terms.size() == f.terms.size());
      CHECK(crossed_dist(sys, back, f) == 0.0);
      CHECK(kernel_dist(sys, gamma(sys, back), K) == 0.0);
    }
  }
}

TEST_CASE("torus point masses compose with the quarter phase") {
  auto sys = make_builtin("z2-theta-quarter");
  const Elem a{1, 0}, b{0, 1}, ab{1, 1};
  const KernelElement Ka = gamma(sys, crossed_delta(sys, a));
  const KernelElement Kb = gamma(sys, crossed_delta(sys, b));
  const KernelElement lhs = compose(sys, Ka, Kb);
  CHECK(lhs.diags.size() == 1);
  CHECK(kernel_dist(sys, lhs, gamma(sys, crossed_delta(sys, ab, Cplx(0.0, 1.0)))) < 1e-14);
  const KernelElement rhs = compose(sys, Kb, Ka);
  CHECK(kernel_dist(sys, rhs, gamma(sys, crossed_delta(sys, ab, Cplx(0.0, -1.0)))) < 1e-14);
}

TEST_CASE("single diagonals compose onto the product diagonal") {
  for (const auto& name : {"c6-phase", "z2-theta-quarter", "c4-sigma-flip"}) {
    auto sys = make_builtin(name);
    const auto pool = sample_pool(*sys.G, 3);
    Rng rng(33);
    for (int t = 0; t < 5; ++t) {
      KernelElement K = random_kernel(sys, rng, pool, 1, 2);
      KernelElement L = random_kernel(sys, rng, pool, 1, 2);
      const Elem a = K.diags.begin()->first;
      const Elem b = L.diags.begin()->first;
      const KernelElement P = compose(sys, K, L);
      INFO(name << " trial " << t);
      REQUIRE(P.diags.size() <= 1);  // exact zeros may prune the band entirely
      if (!P.diags.empty()) CHECK(P.diags.begin()->first == sys.G->multiply(a, b));
      // Spot value: the only z contributing to (x, y) on these bands is a^{-1}x.
      const Elem x = pick(rng, pool);
      const Elem y = sys.G->multiply(sys.G->inverse(b), sys.G->multiply(sys.G->inverse(a), x));
      const Coefficient want =
          kernel_value(sys, K, x, sys.G->multiply(sys.G->inverse(a), x)) *
          kernel_value(sys, L, sys.G->multiply(sys.G->inverse(a), x), y) *
          sys.act(sys.G->inverse(x), sys.omega(a, b));
      CHECK(sup_dist(kernel_value(sys, P, x, y), want) < 1e-13);
    }
  }
}

TEST_CASE("composition and involution match the exhaustive two-variable oracle") {
  for (const auto& name : {"c6-phase", "d3-phase", "c2xc4-bichar", "c4-sigma-flip", "d3-point"}) {
    auto sys = make_builtin(name);
    const auto& G = *sys.G;
    const auto pool = G.elements();
    Rng rng(34);
    const KernelElement K = random_kernel(sys, rng, pool, 3, 2);
    const KernelElement L = random_kernel(sys, rng, pool, 3, 2);
    const KernelElement P = compose(sys, K, L);
    const KernelElement S = involve_kernel(sys, K);
    double worst_p = 0.0, worst_s = 0.0;
    for (const Elem& x : pool)
      for (const Elem& y : pool) {
        worst_p = std::max(worst_p, sup_dist(kernel_value(sys, P, x, y),
                                             brute_compose_value(sys, K, L, x, y)));
        worst_s = std::max(worst_s, sup_dist(kernel_value(sys, S, x, y),
                                             brute_involve_value(sys, K, x, y)));
      }
    INFO(name);
    CHECK(worst_p < 1e-12);
    CHECK(worst_s < 1e-13);
  }
}

TEST_CASE("kernel composition satisfies the banach star algebra laws") {
  for (const auto& name : builtin_names()) {
    auto sys = make_builtin(name);
    const auto pool = sample_pool(*sys.G, 3);
    const NormSpec l1 = make_norm(*sys.G, NormSpec::Kind::L1);
    const KernelElement unit = gamma(sys, crossed_identity(sys));
    Rng rng(35);
    for (int t = 0; t < 8; ++t) {
      const KernelElement K = random_kernel(sys, rng, pool, 3, 2);
      const KernelElement L = random_kernel(sys, rng, pool, 3, 2);
      const KernelElement M = random_kernel(sys, rng, pool, 3, 2);
      const double scale = std::max(1.0, kernel_norm(sys, K, l1) * kernel_norm(sys, L, l1) *
                                             std::max(1.0, kernel_norm(sys, M, l1)));
      INFO(name << " trial " << t);
      CHECK(kernel_dist(sys, compose(sys, compose(sys, K, L), M),
                        compose(sys, K, compose(sys, L, M))) < 1e-12 * scale);
      CHECK(kernel_dist(sys, involve_kernel(sys, involve_kernel(sys, K)), K) < 1e-12);
      CHECK(kernel_dist(sys, involve_kernel(sys, compose(sys, K, L)),
                        compose(sys, involve_kernel(sys, L), involve_kernel(sys, K))) <
            1e-12 * scale);
      CHECK(kernel_dist(sys, compose(sys, unit, K), K) < 1e-12);
      CHECK(kernel_dist(sys, compose(sys, K, unit), K) < 1e-12);
    }
  }
}

TEST_CASE("kernel norms are the admissible norms of per-diagonal sups") {
  auto sys = make_builtin("z1-standard-cob");
  const auto& G = *sys.G;
  // Diagonal sups 2 and 3 at weight values 1 and 4 give 2*1 + 3*4 = 14.
  KernelElement K;
  {
    Diagonal d0;
    d0.tail = sys.constant(2.0);
    d0.window[Elem{5}] = sys.constant(Cplx(0.0, 1.0));  // below the tail sup
    K.diags[G.identity()] = std::move(d0);
    Diagonal d1;
    d1.tail = sys.constant(Cplx(0.0, 3.0));
    K.diags[Elem{1}] = std::move(d1);
  }
  const NormSpec l1w = make_norm(G, NormSpec::Kind::L1Weighted, Weight::poly(2.0));
  CHECK(kernel_norm(sys, K, l1w) == 14.0);
  const NormSpec l1 = make_norm(G, NormSpec::Kind::L1);
  CHECK(kernel_norm(sys, K, l1) == 5.0);

  // A window value above the tail moves the sup.
  K.diags[G.identity()].window[Elem{-2}] = sys.constant(Cplx(6.0, 8.0));
  CHECK(kernel_norm(sys, K, l1) == 13.0);
}

TEST_CASE("kernel norms are submultiplicative star isometries with the ideal bound") {
  for (const auto& name : {"z2-theta-quarter", "d3-phase", "z1-standard-cob"}) {
    auto sys = make_builtin(name);
    const auto pool = sample_pool(*sys.G, 3);
    const NormSpec l1 = make_norm(*sys.G, NormSpec::Kind::L1);
    const NormSpec l1w = make_norm(*sys.G, NormSpec::Kind::L1Weighted, Weight::poly(2.0));
    Rng rng(36);
    for (int t = 0; t < 10; ++t) {
      const KernelElement K = random_kernel(sys, rng, pool, 3, 2);
      const KernelElement L = random_kernel(sys, rng, pool, 3, 2);
      const KernelElement P = compose(sys, K, L);
      INFO(name << " trial " << t);
      for (const NormSpec* n : {&l1, &l1w}) {
        CHECK(kernel_norm(sys, P, *n) <=
              kernel_norm(sys, K, *n) * kernel_norm(sys, L, *n) * (1.0 + 1e-12));
        const double nk = kernel_norm(sys, K, *n);
        CHECK(std::abs(kernel_norm(sys, involve_kernel(sys, K), *n) - nk) <= 1e-12 * nk);
      }
      // Weighted-by-plain composition stays in the plain space with the
      // product bound.
      CHECK(kernel_norm(sys, P, l1) <=
            kernel_norm(sys, K, l1w) * kernel_norm(sys, L, l1) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("covariance is exact, preserved by the operations, and perturbations are caught") {
  auto sys = make_builtin("c4-sigma-flip");
  const auto& G = *sys.G;
  const auto pool = G.elements();
  Rng rng(37);

  SECTION("the exact residual equals the exhaustive sup") {
    for (int t = 0; t < 10; ++t) {
      const KernelElement K = random_kernel(sys, rng, pool, 3, 2);
      const CovarianceReport rep = is_covariant(sys, K);
      CHECK(rep.residual == brute_covariance_residual(sys, K));
    }
  }

  SECTION("gamma images are exactly covariant and stay so under the operations") {
    const CrossedElement f = random_crossed(sys, rng, pool, 4);
    const CrossedElement g = random_crossed(sys, rng, pool, 4);
    const KernelElement K = gamma(sys, f);
    const KernelElement L = gamma(sys, g);
    CHECK(is_covariant(sys, K).residual == 0.0);
    CHECK(is_covariant(sys, compose(sys, K, L)).residual < 1e-12);
    CHECK(is_covariant(sys, involve_kernel(sys, K)).residual < 1e-12);
  }

  SECTION("a single perturbed entry is detected with its diagonal as witness") {
    const CrossedElement f = random_crossed(sys, rng, pool, 4);
    KernelElement K = gamma(sys, f);
    const Elem a = K.diags.begin()->first;
    const Elem x = pool[1];
    Diagonal& d = K.diags.begin()->second;
    d.window[x] = diagonal_value(sys, d, x) + sys.constant(0.05);
    const CovarianceReport rep = is_covariant(sys, K);
    CHECK_FALSE(rep.covariant);
    CHECK(rep.residual > 1e-3);
    CHECK(std::abs(rep.residual - 0.05) < 1e-15);
    CHECK(rep.witness == a);
    CHECK_THROWS_AS(gamma_inverse(sys, K), std::domain_error);
  }
}

TEST_CASE("base-point evaluation reproduces the two-variable form to the last bit") {
  for (const auto& name : {"z1-standard-cob", "z2-standard-theta"}) {
    auto sys = make_builtin(name);
    const auto pool = sample_pool(*sys.G, 3);
    Rng rng(38);
    for (int t = 0; t < 10; ++t) {
      const CrossedElement f = random_crossed(sys, rng, pool, 4);
      const ScalarKernel S = upsilon(sys, gamma(sys, f));
      for (int s = 0; s < 30; ++s) {
        const Elem x = pick(rng, pool);
        const Elem y = pick(rng, pool);
        const Elem a = sys.G->multiply(x, sys.G->inverse(y));
        INFO(name << " trial " << t);
        CHECK(scalar_kernel_value(sys, S, x, y) == eval_at(f, a, SigmaPoint::at_point(x)));
      }
    }
  }
}

TEST_CASE("base-point evaluation intertwines composition and involution") {
  for (const auto& name : {"z1-standard-cob", "z2-standard-theta"}) {
    auto sys = make_builtin(name);
    const auto pool = sample_pool(*sys.G, 3);
    Rng rng(39);
    for (int t = 0; t < 8; ++t) {
      const KernelElement K = gamma(sys, random_crossed(sys, rng, pool, 4));
      const KernelElement L = gamma(sys, random_crossed(sys, rng, pool, 4));
      INFO(name << " trial " << t);
      CHECK(scalar_kernel_dist(sys, upsilon(sys, compose(sys, K, L)),
                               scalar_compose(sys, upsilon(sys, K), upsilon(sys, L))) < 1e-12);
      CHECK(scalar_kernel_dist(sys, upsilon(sys, involve_kernel(sys, K)),
                               scalar_involve(sys, upsilon(sys, K))) < 1e-12);
    }
  }
  auto scalar_sys = make_builtin("c6-phase");
  CHECK_THROWS_AS(upsilon(scalar_sys, KernelElement{}), std::invalid_argument);
}

TEST_CASE("with the trivial cocycle the scalar operations are plain matrix calculus") {
  auto G = parse_group("Z^1");
  auto sys = make_system(G, Model::Standard, 1, Action::translation(G),
                         Cocycle::trivial(Model::Standard, 1), "z1-plain");
  const auto pool = sample_pool(*G, 3);
  Rng rng(40);
  const CrossedElement f = random_crossed(sys, rng, pool, 4);
  const CrossedElement g = random_crossed(sys, rng, pool, 4);
  const ScalarKernel A = upsilon(sys, gamma(sys, f));
  const ScalarKernel B = upsilon(sys, gamma(sys, g));
  const ScalarKernel P = scalar_compose(sys, A, B);
  const ScalarKernel S = scalar_involve(sys, A);
  Rng spot(41);
  for (int s = 0; s < 40; ++s) {
    const Elem x = pick(spot, pool);
    const Elem y = pick(spot, pool);
    // Composition along the group without any phase.
    Cplx acc = 0.0;
    for (const Elem& u : sample_pool(*G, 9))
      acc += scalar_kernel_value(sys, A, x, u) * scalar_kernel_value(sys, B, u, y);
    CHECK(std::abs(scalar_kernel_value(sys, P, x, y) - acc) < 1e-12);
    CHECK(scalar_kernel_value(sys, S, x, y) == std::conj(scalar_kernel_value(sys, A, y, x)));
  }
}

TEST_CASE("scalar kernel norms take per-diagonal sups") {
  auto G = parse_group("Z^1");
  auto sys = make_system(G, Model::Standard, 1, Action::translation(G),
                         Cocycle::trivial(Model::Standard, 1), "z1-plain");
  ScalarKernel K;
  K.diags[Elem{0}] = ScalarDiagonal{{{Elem{3}, Cplx(0.5, 0.0)}}, Cplx(2.0, 0.0)};
  K.diags[Elem{1}] = ScalarDiagonal{{{Elem{0}, Cplx(0.0, 4.0)}}, Cplx(1.0, 0.0)};
  const NormSpec l1 = make_norm(*G, NormSpec::Kind::L1);
  CHECK(scalar_norm(sys, K, l1) == 6.0);
  const NormSpec l1w = make_norm(*G, NormSpec::Kind::L1Weighted, Weight::poly(2.0));
  CHECK(scalar_norm(sys, K, l1w) == 2.0 + 4.0 * 4.0);
}

TEST_CASE("covariant kernels are recovered from their base-point image") {
  for (const auto& name : {"z1-standard-cob", "z2-standard-theta"}) {
    auto sys = make_builtin(name);
    const auto pool = sample_pool(*sys.G, 3);
    Rng rng(42);
    for (int t = 0; t < 8; ++t) {
      const CrossedElement f = random_crossed(sys, rng, pool, 4);
      const ScalarKernel S = upsilon(sys, gamma(sys, f));
      // d_a as a function of the point is background tail plus window bumps.
      CrossedElement back;
      for (const auto& [a, sd] : S.diags) {
        ScalarFn corr;
        for (const auto& [y, v] : sd.window) corr[y] = v - sd.tail;
        crossed_add_term(back, a, Coefficient::standard(sd.tail, std::move(corr)));
      }
      INFO(name << " trial " << t);
      CHECK(crossed_dist(sys, back, f) < 1e-14);
    }
  }
}
