#pragma once

/**
 * Coefficient algebra elements. Three commutative models:
 *
 *   Scalar          one complex number
 *   FiniteSpectrum  a function on a finite point set Sigma = {0..m-1},
 *                   stored densely
 *   Standard        a function on G of the form background + correction,
 *                   with the correction finitely supported; the model of
 *                   "constant at infinity" functions
 *
 * All operations are pointwise, and the sup norm is exact in every model:
 * for Standard it is max(|background|, max over the correction support of
 * |background + correction|).
 */

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tca/group.hpp"
#include "tca/weight.hpp"

namespace tca {

enum class Model { Scalar, FiniteSpectrum, Standard };

inline std::string model_name(Model m) {
  switch (m) {
    case Model::Scalar: return "scalar";
    case Model::FiniteSpectrum: return "finite_spectrum";
    case Model::Standard: return "standard";
  }
  return "scalar";
}

/// A point of the coefficient spectrum, for three-variable views f(x; sigma).
struct SigmaPoint {
  enum class Kind { Only, Index, Point, Background };
  Kind kind = Kind::Only;
  int index = 0;
  Elem point;

  static SigmaPoint only() { return {}; }
  static SigmaPoint at_index(int i) {
    SigmaPoint p;
    p.kind = Kind::Index;
    p.index = i;
    return p;
  }
  static SigmaPoint at_point(Elem y) {
    SigmaPoint p;
    p.kind = Kind::Point;
    p.point = std::move(y);
    return p;
  }
  static SigmaPoint background() {
    SigmaPoint p;
    p.kind = Kind::Background;
    return p;
  }

  std::string str() const {
    switch (kind) {
      case Kind::Only: return "*";
      case Kind::Index: return std::to_string(index);
      case Kind::Point: return elem_str(point);
      case Kind::Background: return "background";
    }
    return "*";
  }
};

class Coefficient {
 public:
  Coefficient() = default;

  static Coefficient scalar(Cplx v) {
    Coefficient c;
    c.model_ = Model::Scalar;
    c.s_ = v;
    return c;
  }

  static Coefficient finite(std::vector<Cplx> values) {
    if (values.empty()) throw std::invalid_argument("finite-spectrum value needs points");
    Coefficient c;
    c.model_ = Model::FiniteSpectrum;
    c.vals_ = std::move(values);
    return c;
  }

  static Coefficient standard(Cplx background, ScalarFn correction = {}) {
    Coefficient c;
    c.model_ = Model::Standard;
    c.bg_ = background;
    c.corr_ = std::move(correction);
    c.prune_();
    return c;
  }

  static Coefficient constant(Model m, int sigma_size, Cplx v) {
    switch (m) {
      case Model::Scalar: return scalar(v);
      case Model::FiniteSpectrum:
        return finite(std::vector<Cplx>(static_cast<std::size_t>(sigma_size), v));
      case Model::Standard: return standard(v);
    }
    return scalar(v);
  }

  static Coefficient zero(Model m, int sigma_size) { return constant(m, sigma_size, 0.0); }
  static Coefficient one(Model m, int sigma_size) { return constant(m, sigma_size, 1.0); }

  Model model() const { return model_; }
  int sigma_size() const { return static_cast<int>(vals_.size()); }
  Cplx scalar_value() const { return s_; }
  Cplx background() const { return bg_; }
  const std::vector<Cplx>& values() const { return vals_; }
  const ScalarFn& correction() const { return corr_; }

  Cplx eval(const SigmaPoint& p) const {
    switch (model_) {
      case Model::Scalar: return s_;
      case Model::FiniteSpectrum:
        if (p.kind != SigmaPoint::Kind::Index || p.index < 0 || p.index >= sigma_size())
          throw std::out_of_range("sigma point " + p.str() + " is not a spectrum index");
        return vals_[static_cast<std::size_t>(p.index)];
      case Model::Standard:
        if (p.kind == SigmaPoint::Kind::Background) return bg_;
        if (p.kind != SigmaPoint::Kind::Point)
          throw std::out_of_range("sigma point " + p.str() + " is not a group point");
        {
          auto it = corr_.find(p.point);
          return it == corr_.end() ? bg_ : bg_ + it->second;
        }
    }
    return s_;
  }

  friend Coefficient operator+(const Coefficient& a, const Coefficient& b) {
    a.require_same(b);
    Coefficient out = a;
    switch (a.model_) {
      case Model::Scalar: out.s_ += b.s_; break;
      case Model::FiniteSpectrum:
        for (std::size_t i = 0; i < out.vals_.size(); ++i) out.vals_[i] += b.vals_[i];
        break;
      case Model::Standard:
        out.bg_ += b.bg_;
        for (const auto& [y, v] : b.corr_) out.corr_[y] += v;
        out.prune_();
        break;
    }
    return out;
  }

  friend Coefficient operator-(const Coefficient& a, const Coefficient& b) {
    return a + b.scaled(-1.0);
  }

  friend Coefficient operator*(const Coefficient& a, const Coefficient& b) {
    a.require_same(b);
    Coefficient out = a;
    switch (a.model_) {
      case Model::Scalar: out.s_ *= b.s_; break;
      case Model::FiniteSpectrum:
        for (std::size_t i = 0; i < out.vals_.size(); ++i) out.vals_[i] *= b.vals_[i];
        break;
      case Model::Standard: {
        out.bg_ = a.bg_ * b.bg_;
        ScalarFn corr;
        auto add_key = [&](const Elem& y) {
          if (corr.count(y)) return;
          Cplx va = a.bg_, vb = b.bg_;
          if (auto it = a.corr_.find(y); it != a.corr_.end()) va += it->second;
          if (auto it = b.corr_.find(y); it != b.corr_.end()) vb += it->second;
          corr[y] = va * vb - out.bg_;
        };
        for (const auto& [y, v] : a.corr_) add_key(y);
        for (const auto& [y, v] : b.corr_) add_key(y);
        out.corr_ = std::move(corr);
        out.prune_();
        break;
      }
    }
    return out;
  }

  Coefficient scaled(Cplx t) const {
    Coefficient out = *this;
    switch (model_) {
      case Model::Scalar: out.s_ *= t; break;
      case Model::FiniteSpectrum:
        for (auto& v : out.vals_) v *= t;
        break;
      case Model::Standard:
        out.bg_ *= t;
        for (auto& [y, v] : out.corr_) v *= t;
        out.prune_();
        break;
    }
    return out;
  }

  /// Pointwise complex conjugate, the adjoint of the commutative models.
  Coefficient adjoint() const {
    Coefficient out = *this;
    switch (model_) {
      case Model::Scalar: out.s_ = std::conj(s_); break;
      case Model::FiniteSpectrum:
        for (auto& v : out.vals_) v = std::conj(v);
        break;
      case Model::Standard:
        out.bg_ = std::conj(bg_);
        for (auto& [y, v] : out.corr_) v = std::conj(v);
        break;
    }
    return out;
  }

  double sup_norm() const {
    switch (model_) {
      case Model::Scalar: return std::abs(s_);
      case Model::FiniteSpectrum: {
        double m = 0.0;
        for (const auto& v : vals_) m = std::max(m, std::abs(v));
        return m;
      }
      case Model::Standard: {
        double m = std::abs(bg_);
        for (const auto& [y, v] : corr_) m = std::max(m, std::abs(bg_ + v));
        return m;
      }
    }
    return 0.0;
  }

  /// Largest deviation of |value| from 1 over the whole spectrum.
  double unitary_defect() const {
    switch (model_) {
      case Model::Scalar: return std::abs(std::abs(s_) - 1.0);
      case Model::FiniteSpectrum: {
        double m = 0.0;
        for (const auto& v : vals_) m = std::max(m, std::abs(std::abs(v) - 1.0));
        return m;
      }
      case Model::Standard: {
        double m = std::abs(std::abs(bg_) - 1.0);
        for (const auto& [y, v] : corr_) m = std::max(m, std::abs(std::abs(bg_ + v) - 1.0));
        return m;
      }
    }
    return 0.0;
  }

  bool is_zero() const { return sup_norm() == 0.0; }

 private:
  void require_same(const Coefficient& b) const {
    if (model_ != b.model_ || vals_.size() != b.vals_.size())
      throw std::invalid_argument("coefficient models are incompatible");
  }
  void prune_() {
    for (auto it = corr_.begin(); it != corr_.end();)
      it = it->second == 0.0 ? corr_.erase(it) : std::next(it);
  }

  Model model_ = Model::Scalar;
  Cplx s_ = 0.0;
  std::vector<Cplx> vals_;
  Cplx bg_ = 0.0;
  ScalarFn corr_;
};

inline double sup_dist(const Coefficient& a, const Coefficient& b) { return (a - b).sup_norm(); }

}  // namespace tca
