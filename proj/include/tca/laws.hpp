#pragma once

/**
 * Banach *-algebra law sweeps for the convolution algebra and the kernel
 * algebra: associativity, the two-sided unit, involutivity of the star,
 * and anti-multiplicativity.  Residuals are relative to the product of
 * the operand norms, so the tolerance reads uniformly across scales.
 *
 * The random sweeps draw seeded operands per trial.  The exhaustive
 * sweeps enumerate every support pattern of size up to a cap on a finite
 * group (41 patterns at size <= 3 on a six-element group); coefficients
 * are seeded per pattern, so all pattern triples are covered while each
 * operand stays reproducible.  Kernel operands in the random sweep carry
 * explicit window points and tails (generally non-covariant); the
 * exhaustive kernel sweep runs tail-only diagonals over the same support
 * patterns.
 */

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tca/kernel.hpp"
#include "tca/rng.hpp"

namespace tca {

struct LawsReport {
  std::string system_name;
  bool pass = true;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<AxiomCheck> checks;
};

namespace detail {

inline Coefficient laws_coeff(const TwistedSystem& sys, Rng& rng, const std::vector<Elem>& pool) {
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

inline void laws_update(AxiomCheck& chk, double residual, const std::vector<Elem>& witness,
                        double tol) {
  if (residual > chk.max_violation) {
    chk.max_violation = residual;
    chk.witness = witness;
  }
  if (residual > tol) chk.pass = false;
}

inline std::vector<Elem> support_witness(const CrossedElement& f, const CrossedElement& g,
                                         const CrossedElement& h) {
  std::vector<Elem> w;
  for (const auto* e : {&f, &g, &h}) {
    for (const auto& [x, c] : e->terms) {
      if (w.size() >= 9) return w;
      w.push_back(x);
    }
  }
  return w;
}

inline std::vector<Elem> band_witness(const KernelElement& K, const KernelElement& L,
                                      const KernelElement& M) {
  std::vector<Elem> w;
  for (const auto* k : {&K, &L, &M}) {
    for (const auto& [a, d] : k->diags) {
      if (w.size() >= 9) return w;
      w.push_back(a);
    }
  }
  return w;
}

/// Support patterns of size 1..max_support over the group elements,
/// enumerated in lexicographic order of index tuples.
inline std::vector<std::vector<Elem>> support_patterns(const GroupCtx& G, int max_support) {
  const auto elems = G.elements();
  std::vector<std::vector<Elem>> out;
  const int n = static_cast<int>(elems.size());
  std::vector<int> idx;
  auto emit = [&]() {
    std::vector<Elem> pat;
    for (int i : idx) pat.push_back(elems[static_cast<std::size_t>(i)]);
    out.push_back(std::move(pat));
  };
  std::function<void(int, int)> rec = [&](int start, int left) {
    if (!idx.empty()) emit();
    if (left == 0) return;
    for (int i = start; i < n; ++i) {
      idx.push_back(i);
      rec(i + 1, left - 1);
      idx.pop_back();
    }
  };
  rec(0, max_support);
  return out;
}

}  // namespace detail

inline LawsReport check_crossed_laws(const TwistedSystem& sys, int triples, std::uint64_t seed,
                                     std::int64_t radius = 2, int support = 3,
                                     double tol = 1e-12) {
  const NormSpec l1 = make_norm(*sys.G, NormSpec::Kind::L1);
  LawsReport rep;
  rep.system_name = sys.name;
  rep.trials = triples;
  rep.seed = seed;
  AxiomCheck assoc{"convolution-associativity"};
  AxiomCheck unit_l{"convolution-unit-left"};
  AxiomCheck unit_r{"convolution-unit-right"};
  AxiomCheck invol{"convolution-involutivity"};
  AxiomCheck anti{"convolution-anti-multiplicativity"};

  Rng rng(seed);
  const auto pool = sample_pool(*sys.G, radius);
  const CrossedElement e = crossed_identity(sys);
  for (int t = 0; t < triples; ++t) {
    CrossedElement f, g, h;
    for (int i = 0; i < support; ++i) {
      crossed_add_term(f, pick(rng, pool), detail::laws_coeff(sys, rng, pool));
      crossed_add_term(g, pick(rng, pool), detail::laws_coeff(sys, rng, pool));
      crossed_add_term(h, pick(rng, pool), detail::laws_coeff(sys, rng, pool));
    }
    const auto witness = detail::support_witness(f, g, h);
    const double nf = crossed_norm(sys, f, l1);
    const double ng = crossed_norm(sys, g, l1);
    const double nh = crossed_norm(sys, h, l1);

    const CrossedElement fg = crossed_product(sys, f, g);
    detail::laws_update(assoc,
                        crossed_dist(sys, crossed_product(sys, fg, h),
                                     crossed_product(sys, f, crossed_product(sys, g, h))) /
                            std::max(1.0, nf * ng * nh),
                        witness, tol);
    detail::laws_update(unit_l, crossed_dist(sys, crossed_product(sys, e, f), f), witness, tol);
    detail::laws_update(unit_r, crossed_dist(sys, crossed_product(sys, f, e), f), witness, tol);
    detail::laws_update(
        invol, crossed_dist(sys, crossed_involution(sys, crossed_involution(sys, f)), f) /
                   std::max(1.0, nf),
        witness, tol);
    detail::laws_update(
        anti,
        crossed_dist(sys, crossed_involution(sys, fg),
                     crossed_product(sys, crossed_involution(sys, g), crossed_involution(sys, f))) /
            std::max(1.0, nf * ng),
        witness, tol);
  }
  rep.checks = {assoc, unit_l, unit_r, invol, anti};
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

inline LawsReport check_kernel_laws(const TwistedSystem& sys, int triples, std::uint64_t seed,
                                    std::int64_t radius = 2, int bands = 2, int window_points = 1,
                                    double tol = 1e-12) {
  const NormSpec l1 = make_norm(*sys.G, NormSpec::Kind::L1);
  LawsReport rep;
  rep.system_name = sys.name;
  rep.trials = triples;
  rep.seed = seed;
  AxiomCheck assoc{"kernel-associativity"};
  AxiomCheck unit_l{"kernel-unit-left"};
  AxiomCheck unit_r{"kernel-unit-right"};
  AxiomCheck invol{"kernel-involutivity"};
  AxiomCheck anti{"kernel-anti-multiplicativity"};

  Rng rng(seed);
  const auto pool = sample_pool(*sys.G, radius);
  const KernelElement e = gamma(sys, crossed_identity(sys));
  auto random_kernel = [&]() {
    KernelElement K;
    for (int i = 0; i < bands; ++i) {
      Diagonal d;
      d.tail = detail::laws_coeff(sys, rng, pool);
      for (int j = 0; j < window_points; ++j) {
        d.window[pick(rng, pool)] = detail::laws_coeff(sys, rng, pool);
      }
      K.diags[pick(rng, pool)] = std::move(d);
    }
    return K;
  };

  for (int t = 0; t < triples; ++t) {
    const KernelElement K = random_kernel();
    const KernelElement L = random_kernel();
    const KernelElement M = random_kernel();
    const auto witness = detail::band_witness(K, L, M);
    const double nk = kernel_norm(sys, K, l1);
    const double nl = kernel_norm(sys, L, l1);
    const double nm = kernel_norm(sys, M, l1);

    const KernelElement KL = compose(sys, K, L);
    detail::laws_update(assoc,
                        kernel_dist(sys, compose(sys, KL, M),
                                    compose(sys, K, compose(sys, L, M))) /
                            std::max(1.0, nk * nl * nm),
                        witness, tol);
    detail::laws_update(unit_l, kernel_dist(sys, compose(sys, e, K), K), witness, tol);
    detail::laws_update(unit_r, kernel_dist(sys, compose(sys, K, e), K), witness, tol);
    detail::laws_update(invol,
                        kernel_dist(sys, involve_kernel(sys, involve_kernel(sys, K)), K) /
                            std::max(1.0, nk),
                        witness, tol);
    detail::laws_update(
        anti,
        kernel_dist(sys, involve_kernel(sys, KL),
                    compose(sys, involve_kernel(sys, L), involve_kernel(sys, K))) /
            std::max(1.0, nk * nl),
        witness, tol);
  }
  rep.checks = {assoc, unit_l, unit_r, invol, anti};
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

/// Exhaustive pattern sweep on a finite group: every ordered triple of
/// support patterns of size <= max_support, coefficients seeded per
/// pattern.  Unit and involutivity are per-operand and checked once.
inline LawsReport check_crossed_laws_exhaustive(const TwistedSystem& sys, int max_support = 3,
                                                std::uint64_t seed = 1, double tol = 1e-12) {
  const NormSpec l1 = make_norm(*sys.G, NormSpec::Kind::L1);
  LawsReport rep;
  rep.system_name = sys.name;
  rep.seed = seed;
  AxiomCheck assoc{"convolution-associativity"};
  AxiomCheck unit_l{"convolution-unit-left"};
  AxiomCheck unit_r{"convolution-unit-right"};
  AxiomCheck invol{"convolution-involutivity"};
  AxiomCheck anti{"convolution-anti-multiplicativity"};

  const auto patterns = detail::support_patterns(*sys.G, max_support);
  const auto pool = sample_pool(*sys.G, 4);
  std::vector<CrossedElement> ops;
  ops.reserve(patterns.size());
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    Rng rng(seed * 1000003 + p);
    CrossedElement f;
    for (const Elem& x : patterns[p]) crossed_add_term(f, x, detail::laws_coeff(sys, rng, pool));
    ops.push_back(std::move(f));
  }

  std::vector<double> norms;
  norms.reserve(ops.size());
  const CrossedElement e = crossed_identity(sys);
  std::vector<CrossedElement> stars;
  stars.reserve(ops.size());
  for (const auto& f : ops) {
    norms.push_back(crossed_norm(sys, f, l1));
    stars.push_back(crossed_involution(sys, f));
    const auto witness = detail::support_witness(f, f, f);
    detail::laws_update(unit_l, crossed_dist(sys, crossed_product(sys, e, f), f), witness, tol);
    detail::laws_update(unit_r, crossed_dist(sys, crossed_product(sys, f, e), f), witness, tol);
    detail::laws_update(invol,
                        crossed_dist(sys, crossed_involution(sys, stars.back()), f) /
                            std::max(1.0, norms.back()),
                        witness, tol);
  }

  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = 0; j < ops.size(); ++j) {
      const CrossedElement fg = crossed_product(sys, ops[i], ops[j]);
      detail::laws_update(anti,
                          crossed_dist(sys, crossed_involution(sys, fg),
                                       crossed_product(sys, stars[j], stars[i])) /
                              std::max(1.0, norms[i] * norms[j]),
                          detail::support_witness(ops[i], ops[j], ops[j]), tol);
      for (std::size_t k = 0; k < ops.size(); ++k) {
        detail::laws_update(
            assoc,
            crossed_dist(sys, crossed_product(sys, fg, ops[k]),
                         crossed_product(sys, ops[i], crossed_product(sys, ops[j], ops[k]))) /
                std::max(1.0, norms[i] * norms[j] * norms[k]),
            detail::support_witness(ops[i], ops[j], ops[k]), tol);
        rep.trials += 1;
      }
    }
  }
  rep.checks = {assoc, unit_l, unit_r, invol, anti};
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

/// Kernel variant of the exhaustive sweep: tail-only diagonals over the
/// same support patterns.
inline LawsReport check_kernel_laws_exhaustive(const TwistedSystem& sys, int max_support = 3,
                                               std::uint64_t seed = 1, double tol = 1e-12) {
  const NormSpec l1 = make_norm(*sys.G, NormSpec::Kind::L1);
  LawsReport rep;
  rep.system_name = sys.name;
  rep.seed = seed;
  AxiomCheck assoc{"kernel-associativity"};
  AxiomCheck unit_l{"kernel-unit-left"};
  AxiomCheck unit_r{"kernel-unit-right"};
  AxiomCheck invol{"kernel-involutivity"};
  AxiomCheck anti{"kernel-anti-multiplicativity"};

  const auto patterns = detail::support_patterns(*sys.G, max_support);
  const auto pool = sample_pool(*sys.G, 4);
  std::vector<KernelElement> ops;
  ops.reserve(patterns.size());
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    Rng rng(seed * 2000003 + p);
    KernelElement K;
    for (const Elem& a : patterns[p]) K.diags[a] = Diagonal{{}, detail::laws_coeff(sys, rng, pool)};
    ops.push_back(std::move(K));
  }

  std::vector<double> norms;
  std::vector<KernelElement> stars;
  norms.reserve(ops.size());
  stars.reserve(ops.size());
  const KernelElement e = gamma(sys, crossed_identity(sys));
  for (const auto& K : ops) {
    norms.push_back(kernel_norm(sys, K, l1));
    stars.push_back(involve_kernel(sys, K));
    const auto witness = detail::band_witness(K, K, K);
    detail::laws_update(unit_l, kernel_dist(sys, compose(sys, e, K), K), witness, tol);
    detail::laws_update(unit_r, kernel_dist(sys, compose(sys, K, e), K), witness, tol);
    detail::laws_update(invol,
                        kernel_dist(sys, involve_kernel(sys, stars.back()), K) /
                            std::max(1.0, norms.back()),
                        witness, tol);
  }

  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = 0; j < ops.size(); ++j) {
      const KernelElement KL = compose(sys, ops[i], ops[j]);
      detail::laws_update(anti,
                          kernel_dist(sys, involve_kernel(sys, KL),
                                      compose(sys, stars[j], stars[i])) /
                              std::max(1.0, norms[i] * norms[j]),
                          detail::band_witness(ops[i], ops[j], ops[j]), tol);
      for (std::size_t k = 0; k < ops.size(); ++k) {
        detail::laws_update(
            assoc,
            kernel_dist(sys, compose(sys, KL, ops[k]),
                        compose(sys, ops[i], compose(sys, ops[j], ops[k]))) /
                std::max(1.0, norms[i] * norms[j] * norms[k]),
            detail::band_witness(ops[i], ops[j], ops[k]), tol);
        rep.trials += 1;
      }
    }
  }
  rep.checks = {assoc, unit_l, unit_r, invol, anti};
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

}  // namespace tca
