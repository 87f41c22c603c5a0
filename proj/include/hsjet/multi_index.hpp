#ifndef HSJET_MULTI_INDEX_HPP
#define HSJET_MULTI_INDEX_HPP

#include <hsjet/exact_arith.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

namespace hsjet {

/// Exponent vector (alpha_1..alpha_n) indexing a mixed Hasse derivative.
///
/// The canonical order is graded-lex: smaller size first, and among indices
/// of equal size the lexicographically larger vector first, so that for n = 2
/// the order begins (0,0) (1,0) (0,1) (2,0) (1,1) (0,2).
class MultiIndex {
public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n) : e_(n, 0) {}
  MultiIndex(std::initializer_list<unsigned> init) : e_(init) {}
  explicit MultiIndex(std::vector<unsigned> e) : e_(std::move(e)) {}

  static MultiIndex zero(std::size_t n) { return MultiIndex(n); }
  static MultiIndex unit(std::size_t n, std::size_t i, unsigned k = 1) {
    MultiIndex m(n);
    m.e_.at(i) = k;
    return m;
  }

  std::size_t length() const { return e_.size(); }
  unsigned size() const { return std::accumulate(e_.begin(), e_.end(), 0U); }
  bool is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](unsigned v) { return v == 0; });
  }
  unsigned operator[](std::size_t i) const { return e_[i]; }
  unsigned& operator[](std::size_t i) { return e_[i]; }
  const std::vector<unsigned>& entries() const { return e_; }

  /// Componentwise partial order alpha <= beta.
  bool divides(const MultiIndex& o) const {
    check_length(o);
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    a.check_length(b);
    MultiIndex r = a;
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += b.e_[i];
    return r;
  }
  /// Requires b <= a componentwise.
  friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
    if (!b.divides(a)) throw Error("multi-index subtraction underflow");
    MultiIndex r = a;
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] -= b.e_[i];
    return r;
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    // Larger vector first within a graded piece.
    return b.e_ <=> a.e_;
  }

  /// "(2,0)"-style rendering.
  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(e_[i]);
    }
    return s + ")";
  }

  void check_length(const MultiIndex& o) const {
    if (o.e_.size() != e_.size()) throw Error("multi-index length mismatch");
  }

private:
  std::vector<unsigned> e_;
};

/// All n-multi-indices of size <= m in canonical order; there are C(n+m, n).
inline std::vector<MultiIndex> enumerate_multiindices(std::size_t n, unsigned m) {
  std::vector<MultiIndex> out;
  MultiIndex cur(n);
  // Emit every vector of exactly size k, lexicographically descending.
  auto fill = [&](auto&& self, std::size_t pos, unsigned remaining) -> void {
    if (pos + 1 == n) {
      cur[pos] = remaining;
      out.push_back(cur);
      return;
    }
    for (unsigned v = remaining + 1; v-- > 0;) {
      cur[pos] = v;
      self(self, pos + 1, remaining - v);
    }
    cur[pos] = 0;
  };
  if (n == 0) {
    out.emplace_back(0);
    return out;
  }
  for (unsigned k = 0; k <= m; ++k) fill(fill, 0, k);
  return out;
}

/// Multi-indices beta with beta <= alpha componentwise, in canonical order.
inline std::vector<MultiIndex> sub_indices(const MultiIndex& alpha) {
  std::vector<MultiIndex> out;
  MultiIndex cur(alpha.length());
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == alpha.length()) {
      out.push_back(cur);
      return;
    }
    for (unsigned v = 0; v <= alpha[pos]; ++v) {
      cur[pos] = v;
      self(self, pos + 1);
    }
    cur[pos] = 0;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Coefficient of D_{alpha+beta} in D_alpha o D_beta: prod_i C(alpha_i+beta_i, alpha_i).
inline Scalar comp_coeff(const MultiIndex& alpha, const MultiIndex& beta, const FieldDescriptor& field) {
  alpha.check_length(beta);
  mpz_class prod = 1;
  for (std::size_t i = 0; i < alpha.length(); ++i) prod *= binom_exact(alpha[i] + beta[i], alpha[i]);
  return Scalar::mod(prod, field.characteristic);
}

}  // namespace hsjet

#endif  // HSJET_MULTI_INDEX_HPP
