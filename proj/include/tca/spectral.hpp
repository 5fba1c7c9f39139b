#pragma once

/**
 * Numerical probes of spectral behaviour in the convolution algebra.
 *
 * The radius estimator runs the Gelfand ladder rho_j = ||h^(2^j)||^(1/2^j)
 * by repeated squaring; submultiplicativity makes the ladder non-increasing
 * (up to rounding) for the L1 and weighted-L1 norms, and every report
 * carries the raw norm sequence.
 *
 * The symmetry probe is a falsifier, not a prover: for h = f* . f with
 * spectrum in [0, lambda], the shifted element lambda delta_e - h again has
 * radius at most lambda, so a shifted ladder estimate far above lambda
 * refutes symmetric behaviour.  Slow ladder convergence is absorbed by a
 * slack factor (default 0.15 at six levels).  On finite groups the probe
 * is sharpened by a dense eigensolve of the full regular matrix: the
 * eigenvalues must be nonnegative up to 1e-10 and are dominated by the
 * Banach estimate.
 *
 * The decay profile inverts the integrated matrix on a window, takes the
 * center row of the inverse through a transposed solve, and buckets entry
 * magnitudes by word distance from the identity; doubling the radius and
 * differencing the rows measures how stable the near entries are under
 * window growth.  A minimum-singular-value gate (power iteration on the
 * inverse normal matrix) guards against profiling a near-singular matrix.
 *
 * The growth verdict packages the weight-space evidence: the n-th root
 * growth sequence of the weight over balls and the within-shell max/min
 * ratio, with the finite sequences attached to the verdict.
 */

#include <cmath>
#include <cstdint>
#include <vector>

#include "tca/rep.hpp"

namespace tca {

struct SpectralReport {
  std::vector<double> norms;  // ||h^(2^j)|| for j = 0..levels
  std::vector<double> rho;    // norms[j]^(1/2^j)
  double lambda = 0.0;        // final ladder value

  // Filled by the symmetry probe: the same ladder for lambda delta_e - h.
  std::vector<double> shifted_norms;
  std::vector<double> shifted_rho;
  double shifted = 0.0;
  double slack = 0.15;
  double margin = 0.0;  // lambda (1 + slack) - shifted
  bool symmetric = true;

  unsigned levels = 0;
  bool budget_exceeded = false;
};

inline SpectralReport spectral_radius_estimate(const TwistedSystem& sys, const CrossedElement& f,
                                               const NormSpec& norm, unsigned levels) {
  const PowerTrace tr = power_trace(sys, f, levels, norm);
  SpectralReport rep;
  rep.levels = tr.levels_computed;
  rep.budget_exceeded = tr.budget_exceeded;
  rep.norms = tr.norms;
  for (std::size_t j = 0; j < tr.norms.size(); ++j) {
    rep.rho.push_back(std::pow(tr.norms[j], std::ldexp(1.0, -static_cast<int>(j))));
  }
  rep.lambda = rep.rho.back();
  rep.shifted = 0.0;
  rep.margin = rep.lambda * (1.0 + rep.slack);
  return rep;
}

/// h = f* . f, lambda from its ladder, then the ladder of lambda delta_e - h.
/// Symmetric spectra keep the shifted radius at lambda; the verdict allows
/// the estimator slack on top.
inline SpectralReport symmetry_probe(const TwistedSystem& sys, const CrossedElement& f,
                                     const NormSpec& norm, unsigned levels = 6,
                                     double slack = 0.15) {
  const CrossedElement h = crossed_product(sys, crossed_involution(sys, f), f);
  SpectralReport rep = spectral_radius_estimate(sys, h, norm, levels);
  rep.slack = slack;

  CrossedElement shifted = crossed_scale(h, -1.0);
  crossed_add_term(shifted, sys.G->identity(),
                   Coefficient::constant(sys.model, sys.sigma_size, rep.lambda));
  const SpectralReport s = spectral_radius_estimate(sys, shifted, norm, levels);
  rep.shifted_norms = s.norms;
  rep.shifted_rho = s.rho;
  rep.shifted = s.lambda;
  rep.budget_exceeded = rep.budget_exceeded || s.budget_exceeded;
  rep.symmetric = rep.shifted <= rep.lambda * (1.0 + slack);
  rep.margin = rep.lambda * (1.0 + slack) - rep.shifted;
  return rep;
}

/// Dense cross-check on finite groups: eigenvalues of the full regular
/// matrix of h = f* . f must be nonnegative up to 1e-10 and are dominated
/// by the Banach ladder estimate up to 1e-8.
struct FiniteSymmetryCheck {
  double min_eig = 0.0;
  double max_eig = 0.0;
  double lambda = 0.0;
  bool pass = false;
};

inline FiniteSymmetryCheck finite_symmetry_check(const TwistedSystem& sys, const CrossedElement& f,
                                                 const NormSpec& norm, unsigned levels = 6) {
  if (!sys.G->finite()) throw std::invalid_argument("finite_symmetry_check: group is infinite");
  const CrossedElement h = crossed_product(sys, crossed_involution(sys, f), f);
  const DenseOperator op = regular_matrix(sys, h, full_window(*sys.G));
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat((op.m + Mat(op.m.adjoint())) / 2.0));
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("finite_symmetry_check: eigensolver failed");
  }
  FiniteSymmetryCheck rep;
  rep.min_eig = es.eigenvalues().minCoeff();
  rep.max_eig = es.eigenvalues().maxCoeff();
  rep.lambda = spectral_radius_estimate(sys, h, norm, levels).lambda;
  rep.pass = rep.min_eig >= -1e-10 &&
             rep.lambda >= std::max(std::abs(rep.min_eig), std::abs(rep.max_eig)) - 1e-8;
  return rep;
}

/// Center row of the inverse of the integrated matrix on a window, with a
/// power-iteration estimate of the smallest singular value as the gate.
struct CenterRow {
  Window window;
  int center = -1;
  Vec row;
  double min_singular = 0.0;
  bool invertible = false;
};

namespace detail {

inline Fiber wiener_fiber(const TwistedSystem& sys) {
  switch (sys.model) {
    case Model::Scalar: return point_fiber(SigmaPoint::only());
    case Model::FiniteSpectrum: return point_fiber(SigmaPoint::at_index(0));
    case Model::Standard: return point_fiber(SigmaPoint::at_point(sys.G->identity()));
  }
  return point_fiber(SigmaPoint::only());
}

inline double min_singular_estimate(const Eigen::PartialPivLU<Mat>& lu, int n, int iters = 50) {
  // Power iteration on (A^* A)^{-1}; its top eigenvalue is 1/sigma_min^2.
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = 1.0 + static_cast<double>(i) / n;
  v /= v.norm();
  double lam = 0.0;
  for (int it = 0; it < iters; ++it) {
    const Vec w = lu.solve(lu.adjoint().solve(v));
    lam = w.norm();
    if (!std::isfinite(lam) || lam == 0.0) return 0.0;
    v = w / lam;
  }
  return 1.0 / std::sqrt(lam);
}

}  // namespace detail

inline CenterRow inverse_center_row(const TwistedSystem& sys, const CrossedElement& f,
                                    Window W, double margin = 1e-8) {
  CenterRow out;
  out.window = std::move(W);
  out.center = out.window.at(sys.G->identity());
  if (out.center < 0) throw std::invalid_argument("inverse_center_row: window lacks the identity");
  const Mat A = integrated(sys, detail::wiener_fiber(sys), f, out.window).m;
  const Eigen::PartialPivLU<Mat> lu(A);
  out.min_singular = detail::min_singular_estimate(lu, static_cast<int>(A.rows()));
  out.invertible = std::isfinite(out.min_singular) && out.min_singular > margin;
  if (!out.invertible) return out;
  Vec e = Vec::Zero(A.rows());
  e(out.center) = 1.0;
  out.row = lu.transpose().solve(e);  // row c of A^{-1} is (A^T)^{-1} e_c
  return out;
}

/// Magnitude-by-distance profile of an inverse center row, with stability
/// deltas against the doubled window.
struct DecayProfile {
  std::int64_t R = 0;
  double min_singular = 0.0;
  bool invertible = false;
  std::vector<double> max_abs;   // index: word distance from the identity
  std::vector<double> tail_sum;  // index d: sum of |entries| at distance >= d
  std::vector<double> stability_delta;  // distances 0..stability_radius
  std::int64_t stability_radius = -1;   // R/4 on infinite groups; none on finite
};

inline DecayProfile wiener_decay(const TwistedSystem& sys, const CrossedElement& f,
                                 std::int64_t R, double margin = 1e-8) {
  const GroupCtx& G = *sys.G;
  DecayProfile prof;
  prof.R = R;

  const Window W = G.finite() ? full_window(G) : ball_window(G, R);
  const CenterRow cr = inverse_center_row(sys, f, W, margin);
  prof.min_singular = cr.min_singular;
  prof.invertible = cr.invertible;
  if (!prof.invertible) return prof;

  std::int64_t dmax = 0;
  for (const Elem& x : cr.window.points) dmax = std::max(dmax, G.word_length(x));
  prof.max_abs.assign(static_cast<std::size_t>(dmax) + 1, 0.0);
  std::vector<double> sum_abs(static_cast<std::size_t>(dmax) + 1, 0.0);
  for (int j = 0; j < cr.window.size(); ++j) {
    const auto d = static_cast<std::size_t>(G.word_length(cr.window.points[j]));
    const double mag = std::abs(cr.row(j));
    prof.max_abs[d] = std::max(prof.max_abs[d], mag);
    sum_abs[d] += mag;
  }
  prof.tail_sum.assign(sum_abs.size(), 0.0);
  double run = 0.0;
  for (std::size_t d = sum_abs.size(); d-- > 0;) {
    run += sum_abs[d];
    prof.tail_sum[d] = run;
  }

  if (!G.finite()) {
    const CenterRow cr2 = inverse_center_row(sys, f, ball_window(G, 2 * R), margin);
    if (cr2.invertible) {
      prof.stability_radius = R / 4;
      prof.stability_delta.assign(static_cast<std::size_t>(prof.stability_radius) + 1, 0.0);
      for (int j = 0; j < cr.window.size(); ++j) {
        const std::int64_t d = G.word_length(cr.window.points[j]);
        if (d > prof.stability_radius) continue;
        const int j2 = cr2.window.at(cr.window.points[j]);
        const double delta = std::abs(cr.row(j) - cr2.row(j2));
        auto& slot = prof.stability_delta[static_cast<std::size_t>(d)];
        slot = std::max(slot, delta);
      }
    }
  }
  return prof;
}

/// Growth verdict for a weight: the n-th root growth sequence over balls
/// (condition one: eventually small, probed as the final value under the
/// threshold and a non-increasing tail) and the within-shell max/min ratio
/// (condition two: equal to one up to rounding), with the evidence attached.
struct GrsParams {
  int n_max = 32;
  double threshold = 1.05;
  int tail_window = 5;
};

struct GrsReport {
  UgrsReport growth;
  ShellRatioReport shell;
  GrsParams params;
  bool condition1 = false;
  bool condition2 = false;
  bool pass = false;
};

inline GrsReport grs_verdict(const GroupCtx& G, const Weight& nu, GrsParams params = {}) {
  GrsReport rep;
  rep.params = params;
  rep.growth = check_ugrs(G, nu, params.n_max);
  rep.shell = check_shell_ratio(G, nu, params.n_max);

  const auto& a = rep.growth.a;
  bool tail_ok = true;
  std::size_t first = 1;
  if (a.size() > static_cast<std::size_t>(params.tail_window)) {
    first = a.size() - static_cast<std::size_t>(params.tail_window);
  }
  for (std::size_t i = first; i < a.size(); ++i) {
    tail_ok = tail_ok && a[i] <= a[i - 1] * (1.0 + 1e-12);
  }
  rep.condition1 = !a.empty() && rep.growth.final_value < params.threshold && tail_ok;
  rep.condition2 = rep.shell.max_ratio <= 1.0 + 1e-12;
  rep.pass = rep.condition1 && rep.condition2;
  return rep;
}

}  // namespace tca
