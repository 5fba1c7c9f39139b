#pragma once

/**
 * Dense matrix models of the covariant pairs induced from a base point.
 *
 * A fiber is a finite list of sigma points; the coefficient algebra acts
 * diagonally on it by evaluation.  Over a window W of group elements the
 * induced pair on l^2(W) x fiber is
 *
 *   [r(phi) v](x, k) = phi(x . p_k) v(x, k)
 *   [L(y) v](x, k)   = omega(x^{-1}, y; p_k) v(y^{-1} x, k)
 *
 * with v zero outside W.  The integrated form of a convolution element f
 * is the banded matrix
 *
 *   M((x,k), (y,k)) = f(x y^{-1}; x . p_k) omega(x^{-1}, x y^{-1}; p_k),
 *
 * assembled band by band, and the kernel integration drops the point
 * action on the value because a kernel already carries it:
 *
 *   M((x,k), (y,k)) = K(x, y; p_k) omega(x^{-1}, x y^{-1}; p_k).
 *
 * On a full finite window these are exact *-representations.  On a
 * truncated window the identities hold on the interior: the rows whose
 * two-sided translates by every group element of word length <= r stay
 * inside the window, where r is the sum of the band radii involved.
 *
 * Base points at different window elements are connected by the
 * intertwiner R(x, xz) = omega(z^{-1}, x^{-1}; p), a unitary permutation
 * matrix with phases; it commutes a covariant integrated matrix over to
 * the shifted base point and detects non-covariance by failing to.
 *
 * The regular fiber stacks one base-point block per sigma point (the
 * single background point in the scalar model, all spectrum indices in
 * the finite model, one point per window element in the standard model),
 * so the regular matrix is block-diagonal with intertwined blocks.
 */

#include <Eigen/Dense>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tca/kernel.hpp"

namespace tca {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Ordered list of group elements indexing matrix rows, with reverse lookup.
struct Window {
  std::vector<Elem> points;
  std::map<Elem, int> index;

  int size() const { return static_cast<int>(points.size()); }
  bool contains(const Elem& x) const { return index.count(x) != 0; }

  /// Row of x, or -1 when x lies outside the window.
  int at(const Elem& x) const {
    auto it = index.find(x);
    return it == index.end() ? -1 : it->second;
  }
};

inline Window make_window(const GroupCtx& G, std::vector<Elem> pts) {
  Window W;
  W.points = std::move(pts);
  for (int i = 0; i < static_cast<int>(W.points.size()); ++i) {
    G.validate(W.points[i]);
    if (!W.index.emplace(W.points[i], i).second) {
      throw std::invalid_argument("window: repeated point");
    }
  }
  return W;
}

inline Window full_window(const GroupCtx& G) { return make_window(G, G.elements()); }

inline Window ball_window(const GroupCtx& G, std::int64_t radius) {
  return make_window(G, G.ball(radius));
}

/// Rows x whose two-sided translates gx and xg stay in W for every
/// word_length(g) <= r.  On a full finite window this is every row; on a
/// lattice ball of radius R it contains the ball of radius R - r.
inline std::vector<int> interior(const GroupCtx& G, const Window& W, std::int64_t r) {
  const std::vector<Elem> shifts = G.ball(r);
  std::vector<int> keep;
  for (int i = 0; i < W.size(); ++i) {
    bool inside = true;
    for (const Elem& g : shifts) {
      if (!W.contains(G.multiply(g, W.points[i])) ||
          !W.contains(G.multiply(W.points[i], g))) {
        inside = false;
        break;
      }
    }
    if (inside) keep.push_back(i);
  }
  return keep;
}

/// Fiber of a representation: the coefficient algebra acts by evaluation
/// at these sigma points, one diagonal entry per point.
struct Fiber {
  std::vector<SigmaPoint> pts;

  int dim() const { return static_cast<int>(pts.size()); }
};

inline Fiber point_fiber(SigmaPoint p) { return Fiber{{std::move(p)}}; }

/// All spectrum indices of a finite-model system.
inline Fiber spectrum_fiber(const TwistedSystem& sys) {
  if (sys.model != Model::FiniteSpectrum) {
    throw std::invalid_argument("spectrum_fiber: system is not finite-spectrum");
  }
  Fiber f;
  for (int i = 0; i < sys.sigma_size; ++i) f.pts.push_back(SigmaPoint::at_index(i));
  return f;
}

/// One base point per block of the regular matrix: the background point
/// in the scalar model, every index in the finite model, and one point
/// per window element in the standard model.
inline Fiber regular_fiber(const TwistedSystem& sys, const Window& W) {
  Fiber f;
  switch (sys.model) {
    case Model::Scalar:
      f.pts.push_back(SigmaPoint::only());
      break;
    case Model::FiniteSpectrum:
      for (int i = 0; i < sys.sigma_size; ++i) f.pts.push_back(SigmaPoint::at_index(i));
      break;
    case Model::Standard:
      for (const Elem& z : W.points) f.pts.push_back(SigmaPoint::at_point(z));
      break;
  }
  return f;
}

/// Square matrix indexed by (window element, fiber point), row-major in
/// the fiber: row of (x_i, p_k) is i * fiber + k.
struct DenseOperator {
  Window window;
  int fiber = 1;
  Mat m;

  int rows() const { return window.size() * fiber; }
};

inline DenseOperator zero_operator(Window W, int fiber) {
  const int n = W.size() * fiber;
  return DenseOperator{std::move(W), fiber, Mat::Zero(n, n)};
}

/// r(phi): diagonal with entries phi(x . p_k).
inline DenseOperator rep_value(const TwistedSystem& sys, const Fiber& pi, const Window& W,
                               const Coefficient& phi) {
  DenseOperator op = zero_operator(W, pi.dim());
  const int d = pi.dim();
  for (int i = 0; i < op.window.size(); ++i) {
    for (int k = 0; k < d; ++k) {
      op.m(i * d + k, i * d + k) = phi.eval(sys.act_point(op.window.points[i], pi.pts[k]));
    }
  }
  return op;
}

/// L(y): one phase omega(x^{-1}, y; p_k) per row, at column y^{-1} x,
/// zero when the shifted point leaves the window.
inline DenseOperator rep_shift(const TwistedSystem& sys, const Fiber& pi, const Window& W,
                               const Elem& y) {
  const GroupCtx& G = *sys.G;
  DenseOperator op = zero_operator(W, pi.dim());
  const int d = pi.dim();
  const Elem yi = G.inverse(y);
  for (int i = 0; i < op.window.size(); ++i) {
    const Elem& x = op.window.points[i];
    const int j = op.window.at(G.multiply(yi, x));
    if (j < 0) continue;
    const Elem xi = G.inverse(x);
    for (int k = 0; k < d; ++k) {
      op.m(i * d + k, j * d + k) = sys.omega_at(xi, y, pi.pts[k]);
    }
  }
  return op;
}

/// Integrated form sum_u r(f(u)) L(u) assembled band by band:
/// entry ((x,k), (y,k)) = f(x y^{-1}; x . p_k) omega(x^{-1}, x y^{-1}; p_k).
inline DenseOperator integrated(const TwistedSystem& sys, const Fiber& pi,
                                const CrossedElement& f, const Window& W) {
  const GroupCtx& G = *sys.G;
  DenseOperator op = zero_operator(W, pi.dim());
  const int d = pi.dim();
  for (const auto& [u, c] : f.terms) {
    const Elem ui = G.inverse(u);
    for (int i = 0; i < op.window.size(); ++i) {
      const Elem& x = op.window.points[i];
      const int j = op.window.at(G.multiply(ui, x));
      if (j < 0) continue;
      const Elem xi = G.inverse(x);
      for (int k = 0; k < d; ++k) {
        op.m(i * d + k, j * d + k) +=
            c.eval(sys.act_point(x, pi.pts[k])) * sys.omega_at(xi, u, pi.pts[k]);
      }
    }
  }
  return op;
}

/// Integrated form of a kernel: the value K(x, y) = d_a(x) with a = x y^{-1}
/// is evaluated at the fiber point directly, with the same phase as above.
/// Composing with gamma reproduces integrated() entry for entry.
inline DenseOperator integrated_kernel(const TwistedSystem& sys, const Fiber& pi,
                                       const KernelElement& K, const Window& W) {
  const GroupCtx& G = *sys.G;
  DenseOperator op = zero_operator(W, pi.dim());
  const int d = pi.dim();
  for (const auto& [a, diag] : K.diags) {
    const Elem ai = G.inverse(a);
    for (int i = 0; i < op.window.size(); ++i) {
      const Elem& x = op.window.points[i];
      const int j = op.window.at(G.multiply(ai, x));
      if (j < 0) continue;
      const Coefficient v = diagonal_value(sys, diag, x);
      const Elem xi = G.inverse(x);
      for (int k = 0; k < d; ++k) {
        op.m(i * d + k, j * d + k) += v.eval(pi.pts[k]) * sys.omega_at(xi, a, pi.pts[k]);
      }
    }
  }
  return op;
}

/// Integrated form of a scalar kernel over a standard-model system:
/// entry (x, y) = K(x, y) lambda(x, y) with the scalar phase
/// lambda(x, y) = omega(x^{-1}, x y^{-1}; e).  On base-point evaluations
/// of covariant kernels this reproduces integrated() at the identity.
inline DenseOperator integrated_scalar(const TwistedSystem& sys, const ScalarKernel& K,
                                       const Window& W) {
  detail::require_standard(sys);
  const GroupCtx& G = *sys.G;
  const SigmaPoint base = SigmaPoint::at_point(G.identity());
  DenseOperator op = zero_operator(W, 1);
  for (const auto& [a, diag] : K.diags) {
    const Elem ai = G.inverse(a);
    for (int i = 0; i < op.window.size(); ++i) {
      const Elem& x = op.window.points[i];
      const int j = op.window.at(G.multiply(ai, x));
      if (j < 0) continue;
      op.m(i, j) += scalar_diagonal_value(diag, x) * sys.omega_at(G.inverse(x), a, base);
    }
  }
  return op;
}

/// Regular matrix: integrated form over the regular fiber, one base-point
/// block per fiber point.
inline DenseOperator regular_matrix(const TwistedSystem& sys, const CrossedElement& f,
                                    const Window& W) {
  return integrated(sys, regular_fiber(sys, W), f, W);
}

/// Extract the fiber-point-k block of a block-diagonal operator.
inline Mat fiber_block(const DenseOperator& op, int k) {
  const int n = op.window.size();
  Mat b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b(i, j) = op.m(i * op.fiber + k, j * op.fiber + k);
  }
  return b;
}

/// Intertwiner between the base points p and z . p:
/// R(x, xz) = omega(z^{-1}, x^{-1}; p), zero elsewhere.  One unit-modulus
/// entry per row and column inside the window, so R is unitary on a full
/// finite window and column-isometric wherever xz stays inside.
inline DenseOperator intertwiner(const TwistedSystem& sys, const Elem& z, const SigmaPoint& p,
                                 const Window& W) {
  const GroupCtx& G = *sys.G;
  const Elem zi = G.inverse(z);
  DenseOperator op = zero_operator(W, 1);
  for (int i = 0; i < op.window.size(); ++i) {
    const Elem& x = op.window.points[i];
    const int j = op.window.at(G.multiply(x, z));
    if (j < 0) continue;
    op.m(i, j) = sys.omega_at(zi, G.inverse(x), p);
  }
  return op;
}

/// Operator-valued function on the group: the image of a convolution
/// element under theta, (theta f)(x) = r(f(x)) L(x).
struct OperatorFunction {
  Window window;
  int fiber = 1;
  std::map<Elem, Mat> values;
};

inline OperatorFunction theta_embedding(const TwistedSystem& sys, const Fiber& pi,
                                        const CrossedElement& f, const Window& W) {
  OperatorFunction F{W, pi.dim(), {}};
  for (const auto& [x, c] : f.terms) {
    F.values.emplace(x, rep_value(sys, pi, W, c).m * rep_shift(sys, pi, W, x).m);
  }
  return F;
}

/// Operator convolution (F * G)(x) = sum_y F(y) G(y^{-1} x).
inline OperatorFunction operator_convolve(const GroupCtx& G, const OperatorFunction& A,
                                          const OperatorFunction& B) {
  OperatorFunction C{A.window, A.fiber, {}};
  for (const auto& [x, Mx] : A.values) {
    for (const auto& [y, My] : B.values) {
      const Elem key = G.multiply(x, y);
      Mat prod = Mx * My;
      auto it = C.values.find(key);
      if (it == C.values.end()) {
        C.values.emplace(key, std::move(prod));
      } else {
        it->second += prod;
      }
    }
  }
  return C;
}

/// Operator involution F^*(x) = F(x^{-1})^adj.
inline OperatorFunction operator_star(const GroupCtx& G, const OperatorFunction& A) {
  OperatorFunction C{A.window, A.fiber, {}};
  for (const auto& [x, Mx] : A.values) C.values.emplace(G.inverse(x), Mx.adjoint());
  return C;
}

inline double operator_norm(const Mat& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat(m.adjoint() * m));
  if (es.info() != Eigen::Success) throw std::runtime_error("operator_norm: eigensolver failed");
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

/// Largest |entry|; the exactness checks compare matrices with this.
inline double entry_distance(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("entry_distance: shape mismatch");
  }
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

/// Largest |entry| over the given rows and, when restrict_cols is set,
/// the same columns; identities on truncated windows hold there.
inline double entry_distance_on(const Mat& a, const Mat& b, const std::vector<int>& rows,
                                int fiber, bool restrict_cols = false) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("entry_distance_on: shape mismatch");
  }
  double worst = 0.0;
  for (int i : rows) {
    for (int k = 0; k < fiber; ++k) {
      const int r = i * fiber + k;
      if (restrict_cols) {
        for (int j : rows) {
          for (int kk = 0; kk < fiber; ++kk) {
            worst = std::max(worst, std::abs(a(r, j * fiber + kk) - b(r, j * fiber + kk)));
          }
        }
      } else {
        for (int c = 0; c < a.cols(); ++c) worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
      }
    }
  }
  return worst;
}

/// Smallest eigenvalue of the hermitian part; PSD checks use this.
inline double min_eigenvalue(const Mat& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat((m + Mat(m.adjoint())) / 2.0));
  if (es.info() != Eigen::Success) throw std::runtime_error("min_eigenvalue: eigensolver failed");
  return es.eigenvalues().minCoeff();
}

inline double hermitian_defect(const Mat& m) {
  if (m.rows() == 0) return 0.0;
  return (m - Mat(m.adjoint())).cwiseAbs().maxCoeff();
}

namespace detail {

inline void append_g17(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace detail

/// CSV form: a header line, the element index table, then the matrix rows
/// in row-major order as re,im pairs.  Layout documented in docs/formats.md.
inline std::string operator_csv(const DenseOperator& op) {
  const int n = op.window.size();
  const int coords = n > 0 ? static_cast<int>(op.window.points[0].size()) : 0;
  std::string out = "points," + std::to_string(n) + ",fiber," + std::to_string(op.fiber) +
                    ",coords," + std::to_string(coords) + "\n";
  for (int i = 0; i < n; ++i) {
    out += std::to_string(i);
    for (std::int64_t c : op.window.points[i]) out += "," + std::to_string(c);
    out += "\n";
  }
  const int rows = op.rows();
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < rows; ++c) {
      if (c > 0) out += ",";
      detail::append_g17(out, op.m(r, c).real());
      out += ",";
      detail::append_g17(out, op.m(r, c).imag());
    }
    out += "\n";
  }
  return out;
}

inline void write_operator_csv(const DenseOperator& op, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_operator_csv: cannot open " + path);
  const std::string body = operator_csv(op);
  f.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!f) throw std::runtime_error("write_operator_csv: write failed on " + path);
}

/// Binary form: magic, sizes, the element index table, then the matrix in
/// row-major order as little-endian double pairs.
inline void write_operator_binary(const DenseOperator& op, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_operator_binary: cannot open " + path);
  const char magic[8] = {'T', 'C', 'A', 'D', 'O', 'P', '0', '1'};
  f.write(magic, 8);
  const std::uint64_t n = static_cast<std::uint64_t>(op.window.size());
  const std::uint64_t fiber = static_cast<std::uint64_t>(op.fiber);
  const std::uint64_t coords = n > 0 ? op.window.points[0].size() : 0;
  f.write(reinterpret_cast<const char*>(&n), 8);
  f.write(reinterpret_cast<const char*>(&fiber), 8);
  f.write(reinterpret_cast<const char*>(&coords), 8);
  for (const Elem& x : op.window.points) {
    f.write(reinterpret_cast<const char*>(x.data()),
            static_cast<std::streamsize>(coords * sizeof(std::int64_t)));
  }
  const int rows = op.rows();
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < rows; ++c) {
      const double pair[2] = {op.m(r, c).real(), op.m(r, c).imag()};
      f.write(reinterpret_cast<const char*>(pair), 16);
    }
  }
  if (!f) throw std::runtime_error("write_operator_binary: write failed on " + path);
}

inline DenseOperator read_operator_binary(const GroupCtx& G, const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("read_operator_binary: cannot open " + path);
  char magic[8];
  f.read(magic, 8);
  if (!f || std::string(magic, 8) != "TCADOP01") {
    throw std::runtime_error("read_operator_binary: bad magic in " + path);
  }
  std::uint64_t n = 0, fiber = 0, coords = 0;
  f.read(reinterpret_cast<char*>(&n), 8);
  f.read(reinterpret_cast<char*>(&fiber), 8);
  f.read(reinterpret_cast<char*>(&coords), 8);
  if (!f || n > (1u << 20) || fiber > (1u << 20) || coords > 64) {
    throw std::runtime_error("read_operator_binary: bad sizes in " + path);
  }
  std::vector<Elem> pts(n, Elem(coords));
  for (auto& x : pts) {
    f.read(reinterpret_cast<char*>(x.data()),
           static_cast<std::streamsize>(coords * sizeof(std::int64_t)));
  }
  DenseOperator op = zero_operator(make_window(G, std::move(pts)), static_cast<int>(fiber));
  const int rows = op.rows();
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < rows; ++c) {
      double pair[2];
      f.read(reinterpret_cast<char*>(pair), 16);
      op.m(r, c) = Cplx(pair[0], pair[1]);
    }
  }
  if (!f) throw std::runtime_error("read_operator_binary: truncated file " + path);
  return op;
}

}  // namespace tca
