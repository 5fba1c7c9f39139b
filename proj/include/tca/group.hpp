#pragma once

/**
 * Discrete group contexts with a word metric.
 *
 * A GroupCtx is a direct product of factors, each factor owning a block of
 * 64-bit coordinates in a fixed normal form:
 *
 *   Lattice(n)     n coordinates, free abelian Z^n, word length = l1 norm
 *   Cyclic(m)      one coordinate a in [0,m)
 *   Dihedral(m)    (a,b), a in [0,m), b in {0,1}, meaning r^a s^b with
 *                  relations r^m = s^2 = e, s r s = r^{-1}
 *   Heisenberg(m)  (a,b,c) mod m, the upper unitriangular 3x3 matrices
 *                  [[1,a,c],[0,1,b],[0,0,1]] over Z_m
 *
 * The generating set V contains the identity plus, per factor, the canonical
 * generators and their inverses. Word length of a product element is the sum
 * of factor word lengths; this equals Cayley distance with respect to V
 * because each generator moves exactly one factor. Finite factors get their
 * word lengths from a breadth-first search over the factor at construction.
 *
 * Elements are plain coordinate vectors ordered lexicographically, so
 * std::map<Elem, T> iterates deterministically.
 */

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace tca {

using Elem = std::vector<std::int64_t>;

inline std::string elem_str(const Elem& x) {
  std::string s = "[";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(x[i]);
  }
  return s + "]";
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("group coordinate overflow in addition");
  return r;
}

inline std::int64_t checked_neg(std::int64_t a) {
  if (a == INT64_MIN) throw std::overflow_error("group coordinate overflow in negation");
  return -a;
}

namespace detail {
inline std::int64_t pos_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}
}  // namespace detail

class GroupCtx {
 public:
  enum class Kind { Lattice, Cyclic, Dihedral, Heisenberg };

  struct Factor {
    Kind kind;
    std::int64_t param = 0;  // Lattice rank, or the modulus m

    int coords() const {
      switch (kind) {
        case Kind::Lattice: return static_cast<int>(param);
        case Kind::Cyclic: return 1;
        case Kind::Dihedral: return 2;
        case Kind::Heisenberg: return 3;
      }
      return 0;
    }
    bool finite() const { return kind != Kind::Lattice; }
    std::int64_t order() const {
      switch (kind) {
        case Kind::Cyclic: return param;
        case Kind::Dihedral: return 2 * param;
        case Kind::Heisenberg: return param * param * param;
        default: return 0;
      }
    }
  };

  explicit GroupCtx(std::vector<Factor> factors, std::string spec = "")
      : factors_(std::move(factors)), spec_(std::move(spec)) {
    if (factors_.empty()) throw std::invalid_argument("group needs at least one factor");
    offsets_.reserve(factors_.size() + 1);
    offsets_.push_back(0);
    for (const auto& f : factors_) {
      if (f.kind == Kind::Lattice && (f.param < 1 || f.param > 16))
        throw std::invalid_argument("lattice rank must be in [1,16]");
      if (f.kind != Kind::Lattice && f.param < 1)
        throw std::invalid_argument("finite factor modulus must be >= 1");
      if (f.kind == Kind::Heisenberg && f.param < 2)
        throw std::invalid_argument("Heisenberg modulus must be >= 2");
      offsets_.push_back(offsets_.back() + f.coords());
    }
    finite_ = true;
    for (const auto& f : factors_) finite_ = finite_ && f.finite();
    if (finite_) {
      std::int64_t n = 1;
      for (const auto& f : factors_) {
        if (__builtin_mul_overflow(n, f.order(), &n) || n > kMaxFiniteOrder)
          throw std::invalid_argument("finite group too large to enumerate");
      }
      order_ = n;
    }
    build_factor_tables();
  }

  const std::vector<Factor>& factors() const { return factors_; }
  const std::string& spec() const { return spec_; }
  int coords() const { return offsets_.back(); }
  bool finite() const { return finite_; }
  std::int64_t order() const {
    if (!finite_) throw std::logic_error("order() on an infinite group");
    return order_;
  }

  Elem identity() const {
    Elem e(static_cast<std::size_t>(coords()), 0);
    return e;
  }

  bool is_identity(const Elem& x) const {
    validate(x);
    return std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; });
  }

  void validate(const Elem& x) const {
    if (static_cast<int>(x.size()) != coords())
      throw std::out_of_range("element has " + std::to_string(x.size()) +
                              " coordinates, group needs " + std::to_string(coords()));
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const Factor& f = factors_[i];
      const std::int64_t* a = x.data() + offsets_[i];
      switch (f.kind) {
        case Kind::Lattice: break;
        case Kind::Cyclic:
          if (a[0] < 0 || a[0] >= f.param) bad_coord(x, i);
          break;
        case Kind::Dihedral:
          if (a[0] < 0 || a[0] >= f.param || a[1] < 0 || a[1] > 1) bad_coord(x, i);
          break;
        case Kind::Heisenberg:
          for (int k = 0; k < 3; ++k)
            if (a[k] < 0 || a[k] >= f.param) bad_coord(x, i);
          break;
      }
    }
  }

  Elem multiply(const Elem& x, const Elem& y) const {
    validate(x);
    validate(y);
    Elem out(static_cast<std::size_t>(coords()), 0);
    for (std::size_t i = 0; i < factors_.size(); ++i)
      factor_multiply(factors_[i], x.data() + offsets_[i], y.data() + offsets_[i],
                      out.data() + offsets_[i]);
    return out;
  }

  Elem inverse(const Elem& x) const {
    validate(x);
    Elem out(static_cast<std::size_t>(coords()), 0);
    for (std::size_t i = 0; i < factors_.size(); ++i)
      factor_inverse(factors_[i], x.data() + offsets_[i], out.data() + offsets_[i]);
    return out;
  }

  std::int64_t word_length(const Elem& x) const {
    validate(x);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      total = checked_add(total, factor_word_length(i, x.data() + offsets_[i]));
    return total;
  }

  /// Generating set V: identity first, then per-factor generators embedded
  /// into the product, in factor order.
  std::vector<Elem> generators() const {
    std::vector<Elem> v;
    v.push_back(identity());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      for (const auto& g : factor_gens_[i]) {
        Elem e = identity();
        std::copy(g.begin(), g.end(), e.begin() + offsets_[i]);
        v.push_back(std::move(e));
      }
    }
    return v;
  }

  /// All x with word_length(x) <= r, sorted lexicographically.
  std::vector<Elem> ball(std::int64_t r) const {
    if (r < 0) throw std::invalid_argument("ball radius must be >= 0");
    std::vector<Elem> out;
    Elem prefix(static_cast<std::size_t>(coords()), 0);
    ball_rec(0, r, prefix, out);
    return out;
  }

  /// Every element of a finite group, sorted lexicographically.
  std::vector<Elem> elements() const {
    if (!finite_) throw std::logic_error("elements() on an infinite group");
    std::vector<Elem> out;
    out.reserve(static_cast<std::size_t>(order_));
    Elem prefix(static_cast<std::size_t>(coords()), 0);
    elements_rec(0, prefix, out);
    return out;
  }

  static constexpr std::int64_t kMaxFiniteOrder = 1000000;
  static constexpr std::size_t kMaxBallSize = 10000000;

 private:
  [[noreturn]] void bad_coord(const Elem& x, std::size_t factor_idx) const {
    throw std::out_of_range("element " + elem_str(x) + " is out of range in factor " +
                            std::to_string(factor_idx) + " of " + spec_);
  }

  static void factor_multiply(const Factor& f, const std::int64_t* a, const std::int64_t* b,
                              std::int64_t* out) {
    switch (f.kind) {
      case Kind::Lattice:
        for (int k = 0; k < f.coords(); ++k) out[k] = checked_add(a[k], b[k]);
        break;
      case Kind::Cyclic:
        out[0] = detail::pos_mod(a[0] + b[0], f.param);
        break;
      case Kind::Dihedral:
        // (a0,a1)(b0,b1) = (a0 + (-1)^{a1} b0, a1 xor b1)
        out[0] = detail::pos_mod(a[0] + (a[1] ? -b[0] : b[0]), f.param);
        out[1] = a[1] ^ b[1];
        break;
      case Kind::Heisenberg:
        // (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a b')
        out[0] = detail::pos_mod(a[0] + b[0], f.param);
        out[1] = detail::pos_mod(a[1] + b[1], f.param);
        out[2] = detail::pos_mod(a[2] + b[2] + a[0] * b[1], f.param);
        break;
    }
  }

  static void factor_inverse(const Factor& f, const std::int64_t* a, std::int64_t* out) {
    switch (f.kind) {
      case Kind::Lattice:
        for (int k = 0; k < f.coords(); ++k) out[k] = checked_neg(a[k]);
        break;
      case Kind::Cyclic:
        out[0] = detail::pos_mod(-a[0], f.param);
        break;
      case Kind::Dihedral:
        out[0] = a[1] ? a[0] : detail::pos_mod(-a[0], f.param);
        out[1] = a[1];
        break;
      case Kind::Heisenberg:
        out[0] = detail::pos_mod(-a[0], f.param);
        out[1] = detail::pos_mod(-a[1], f.param);
        out[2] = detail::pos_mod(a[0] * a[1] - a[2], f.param);
        break;
    }
  }

  std::int64_t factor_word_length(std::size_t i, const std::int64_t* a) const {
    const Factor& f = factors_[i];
    if (f.kind == Kind::Lattice) {
      std::int64_t s = 0;
      for (int k = 0; k < f.coords(); ++k)
        s = checked_add(s, a[k] < 0 ? checked_neg(a[k]) : a[k]);
      return s;
    }
    return factor_wlen_[i][static_cast<std::size_t>(factor_index(f, a))];
  }

  // Mixed-radix rank of a finite factor's coordinate tuple; coordinates are
  // ranked most-significant-first so ranks sort like the tuples themselves.
  static std::int64_t factor_index(const Factor& f, const std::int64_t* a) {
    switch (f.kind) {
      case Kind::Cyclic: return a[0];
      case Kind::Dihedral: return a[0] * 2 + a[1];
      case Kind::Heisenberg: return (a[0] * f.param + a[1]) * f.param + a[2];
      default: return 0;
    }
  }

  void build_factor_tables() {
    factor_gens_.resize(factors_.size());
    factor_wlen_.resize(factors_.size());
    factor_elems_.resize(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const Factor& f = factors_[i];
      auto& gens = factor_gens_[i];
      switch (f.kind) {
        case Kind::Lattice:
          for (int k = 0; k < f.coords(); ++k) {
            std::vector<std::int64_t> g(static_cast<std::size_t>(f.coords()), 0);
            g[static_cast<std::size_t>(k)] = 1;
            gens.push_back(g);
            g[static_cast<std::size_t>(k)] = -1;
            gens.push_back(g);
          }
          continue;
        case Kind::Cyclic:
          if (f.param >= 2) gens.push_back({1});
          if (f.param >= 3) gens.push_back({f.param - 1});
          break;
        case Kind::Dihedral:
          if (f.param >= 2) gens.push_back({1, 0});
          if (f.param >= 3) gens.push_back({f.param - 1, 0});
          gens.push_back({0, 1});
          break;
        case Kind::Heisenberg:
          gens.push_back({1, 0, 0});
          if (f.param >= 3) gens.push_back({f.param - 1, 0, 0});
          gens.push_back({0, 1, 0});
          if (f.param >= 3) gens.push_back({0, f.param - 1, 0});
          break;
      }
      // Factor elements in lexicographic order; index = mixed-radix rank.
      const std::int64_t n = f.order();
      auto& elems = factor_elems_[i];
      elems.reserve(static_cast<std::size_t>(n));
      enumerate_factor(f, elems);
      // BFS from the identity over the factor's Cayley graph.
      auto& dist = factor_wlen_[i];
      dist.assign(static_cast<std::size_t>(n), -1);
      std::vector<std::int64_t> queue;
      std::vector<std::int64_t> id(static_cast<std::size_t>(f.coords()), 0);
      dist[static_cast<std::size_t>(factor_index(f, id.data()))] = 0;
      queue.push_back(factor_index(f, id.data()));
      std::vector<std::int64_t> nb(static_cast<std::size_t>(f.coords()), 0);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto& cur = elems[static_cast<std::size_t>(queue[head])];
        for (const auto& g : gens) {
          factor_multiply(f, cur.data(), g.data(), nb.data());
          std::int64_t j = factor_index(f, nb.data());
          if (dist[static_cast<std::size_t>(j)] < 0) {
            dist[static_cast<std::size_t>(j)] = dist[static_cast<std::size_t>(queue[head])] + 1;
            queue.push_back(j);
          }
        }
      }
      for (std::int64_t d : dist)
        if (d < 0)
          throw std::logic_error("factor generators do not generate the factor");
    }
  }

  static void enumerate_factor(const Factor& f, std::vector<std::vector<std::int64_t>>& out) {
    std::vector<std::int64_t> limits;
    switch (f.kind) {
      case Kind::Cyclic: limits = {f.param}; break;
      case Kind::Dihedral: limits = {f.param, 2}; break;
      case Kind::Heisenberg: limits = {f.param, f.param, f.param}; break;
      default: return;
    }
    std::vector<std::int64_t> cur(limits.size(), 0);
    while (true) {
      out.push_back(cur);
      std::size_t k = limits.size();
      while (k > 0) {
        --k;
        if (++cur[k] < limits[k]) break;
        cur[k] = 0;
        if (k == 0) return;
      }
    }
  }

  // Lattice-factor l1 ball in lexicographic order, appended to out as
  // factor-local coordinate tuples.
  static void lattice_ball_rec(int rank, std::int64_t rem, std::vector<std::int64_t>& cur,
                               std::vector<std::vector<std::int64_t>>& out) {
    if (static_cast<int>(cur.size()) == rank) {
      out.push_back(cur);
      return;
    }
    std::int64_t left = rank - static_cast<std::int64_t>(cur.size()) - 1;
    for (std::int64_t v = -rem; v <= rem; ++v) {
      std::int64_t used = v < 0 ? -v : v;
      if (left == 0 && used > rem) continue;
      cur.push_back(v);
      lattice_ball_rec(rank, rem - used, cur, out);
      cur.pop_back();
    }
  }

  void ball_rec(std::size_t fi, std::int64_t rem, Elem& prefix, std::vector<Elem>& out) const {
    if (fi == factors_.size()) {
      if (out.size() >= kMaxBallSize) throw std::runtime_error("ball enumeration exceeds size limit");
      out.push_back(prefix);
      return;
    }
    const Factor& f = factors_[fi];
    if (f.kind == Kind::Lattice) {
      std::vector<std::vector<std::int64_t>> part;
      std::vector<std::int64_t> cur;
      lattice_ball_rec(f.coords(), rem, cur, part);
      for (const auto& p : part) {
        std::int64_t used = 0;
        for (std::int64_t v : p) used += v < 0 ? -v : v;
        std::copy(p.begin(), p.end(), prefix.begin() + offsets_[fi]);
        ball_rec(fi + 1, rem - used, prefix, out);
      }
      std::fill(prefix.begin() + offsets_[fi], prefix.begin() + offsets_[fi] + f.coords(), 0);
    } else {
      const auto& elems = factor_elems_[fi];
      const auto& dist = factor_wlen_[fi];
      for (std::size_t j = 0; j < elems.size(); ++j) {
        if (dist[static_cast<std::size_t>(factor_index(f, elems[j].data()))] > rem) continue;
        std::copy(elems[j].begin(), elems[j].end(), prefix.begin() + offsets_[fi]);
        ball_rec(fi + 1, rem - dist[static_cast<std::size_t>(factor_index(f, elems[j].data()))],
                 prefix, out);
      }
      std::fill(prefix.begin() + offsets_[fi], prefix.begin() + offsets_[fi] + f.coords(), 0);
    }
  }

  void elements_rec(std::size_t fi, Elem& prefix, std::vector<Elem>& out) const {
    if (fi == factors_.size()) {
      out.push_back(prefix);
      return;
    }
    for (const auto& e : factor_elems_[fi]) {
      std::copy(e.begin(), e.end(), prefix.begin() + offsets_[fi]);
      elements_rec(fi + 1, prefix, out);
    }
  }

  std::vector<Factor> factors_;
  std::string spec_;
  std::vector<int> offsets_;
  bool finite_ = false;
  std::int64_t order_ = 0;
  std::vector<std::vector<std::vector<std::int64_t>>> factor_gens_;
  std::vector<std::vector<std::vector<std::int64_t>>> factor_elems_;
  std::vector<std::vector<std::int64_t>> factor_wlen_;
};

using GroupPtr = std::shared_ptr<const GroupCtx>;

/**
 * Group spec grammar (EBNF):
 *
 *   group = atom , { "x" , atom } ;
 *   atom  = "Z^" nat | "C" nat | "D" nat | "Heis" nat ;
 *   nat   = digit , { digit } ;
 *
 * Examples: "Z^2", "C4", "D3", "Heis3", "C2xC4", "Z^1xC2".
 */
inline GroupPtr parse_group(const std::string& spec) {
  std::vector<GroupCtx::Factor> factors;
  std::size_t pos = 0;
  auto read_nat = [&](const char* what) {
    std::size_t start = pos;
    while (pos < spec.size() && spec[pos] >= '0' && spec[pos] <= '9') ++pos;
    if (pos == start)
      throw std::invalid_argument(std::string("group spec '") + spec + "': expected number after " + what);
    if (pos - start > 9) throw std::invalid_argument("group spec number too large");
    return static_cast<std::int64_t>(std::strtoll(spec.substr(start, pos - start).c_str(), nullptr, 10));
  };
  while (true) {
    if (pos >= spec.size()) throw std::invalid_argument("group spec '" + spec + "': expected a factor");
    if (spec.compare(pos, 2, "Z^") == 0) {
      pos += 2;
      factors.push_back({GroupCtx::Kind::Lattice, read_nat("Z^")});
    } else if (spec.compare(pos, 4, "Heis") == 0) {
      pos += 4;
      factors.push_back({GroupCtx::Kind::Heisenberg, read_nat("Heis")});
    } else if (spec[pos] == 'C') {
      ++pos;
      factors.push_back({GroupCtx::Kind::Cyclic, read_nat("C")});
    } else if (spec[pos] == 'D') {
      ++pos;
      factors.push_back({GroupCtx::Kind::Dihedral, read_nat("D")});
    } else {
      throw std::invalid_argument("group spec '" + spec + "': unknown factor at position " +
                                  std::to_string(pos));
    }
    if (pos == spec.size()) break;
    if (spec[pos] != 'x')
      throw std::invalid_argument("group spec '" + spec + "': expected 'x' at position " +
                                  std::to_string(pos));
    ++pos;
  }
  return std::make_shared<GroupCtx>(std::move(factors), spec);
}

}  // namespace tca
