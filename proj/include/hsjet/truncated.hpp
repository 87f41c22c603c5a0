#ifndef HSJET_TRUNCATED_HPP
#define HSJET_TRUNCATED_HPP

#include <hsjet/multi_index.hpp>
#include <hsjet/sparse_poly.hpp>

#include <map>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace hsjet {

/// Element of C[t_1..t_n]/(t_1..t_n)^(m+1).
///
/// Carrier C is BaseElem or DiffPoly. Keys never exceed size m and zero
/// coefficients are never stored, so equality is structural.
template <class C>
class TruncatedElement {
public:
  using CoeffMap = std::map<MultiIndex, C>;

  TruncatedElement() = default;
  TruncatedElement(std::size_t n, unsigned m) : n_(n), m_(m) {}

  static TruncatedElement constant(std::size_t n, unsigned m, const C& c) {
    TruncatedElement r(n, m);
    r.add_term(MultiIndex::zero(n), c);
    return r;
  }
  static TruncatedElement monomial(unsigned m, const MultiIndex& alpha, const C& c) {
    TruncatedElement r(alpha.length(), m);
    r.add_term(alpha, c);
    return r;
  }

  std::size_t t_count() const { return n_; }
  unsigned order_bound() const { return m_; }
  const CoeffMap& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  C coeff(const MultiIndex& alpha) const {
    auto it = c_.find(alpha);
    return it == c_.end() ? C{} : it->second;
  }

  /// Adds c t^alpha; silently drops terms beyond the bound.
  void add_term(const MultiIndex& alpha, const C& c) {
    if (alpha.length() != n_) throw Error("t-index length mismatch");
    if (alpha.size() > m_ || detail::coeff_is_zero(c)) return;
    auto [it, inserted] = c_.try_emplace(alpha, c);
    if (!inserted) {
      it->second = it->second + c;
      if (detail::coeff_is_zero(it->second)) c_.erase(it);
    }
  }

  TruncatedElement operator-() const {
    TruncatedElement r = *this;
    for (auto& [a, c] : r.c_) c = -c;
    return r;
  }
  friend TruncatedElement operator+(TruncatedElement a, const TruncatedElement& b) {
    a.check_compatible(b);
    for (const auto& [k, c] : b.c_) a.add_term(k, c);
    return a;
  }
  friend TruncatedElement operator-(const TruncatedElement& a, const TruncatedElement& b) { return a + (-b); }
  friend TruncatedElement operator*(const TruncatedElement& a, const TruncatedElement& b) { return trunc_mul(a, b); }

  /// Coefficient-wise multiplication by a carrier element (constant embedding).
  TruncatedElement scaled(const C& s) const {
    TruncatedElement r(n_, m_);
    for (const auto& [k, c] : c_) r.add_term(k, c * s);
    return r;
  }

  /// Multiply by t^alpha, discarding what falls beyond the bound.
  TruncatedElement shifted(const MultiIndex& alpha) const {
    TruncatedElement r(n_, m_);
    for (const auto& [k, c] : c_) r.add_term(k + alpha, c);
    return r;
  }

  /// Coefficient-wise image; the carrier may change.
  template <class Fn>
  auto map_coeffs(Fn&& fn) const {
    using D = std::decay_t<decltype(fn(std::declval<const C&>()))>;
    TruncatedElement<D> r(n_, m_);
    for (const auto& [k, c] : c_) r.add_term(k, fn(c));
    return r;
  }

  void check_compatible(const TruncatedElement& o) const {
    if (n_ != o.n_ || m_ != o.m_) throw Error("truncated elements with different t-count or order bound");
  }

  friend bool operator==(const TruncatedElement&, const TruncatedElement&) = default;

  /// Terms in canonical multi-index order, e.g. "1/s - 1/s^2*t1 + 1/s^3*t1^2".
  template <class CoeffFn>
  std::string to_string(CoeffFn&& coeff_summands, const std::vector<std::string>& t_names = {}) const {
    std::vector<TermText> out;
    for (const auto& [alpha, c] : c_) {
      std::string ms;
      for (std::size_t i = 0; i < alpha.length(); ++i) {
        if (alpha[i] == 0) continue;
        if (!ms.empty()) ms += "*";
        ms += i < t_names.size() ? t_names[i] : "t" + std::to_string(i + 1);
        if (alpha[i] != 1) ms += "^" + std::to_string(alpha[i]);
      }
      std::vector<TermText> cs = coeff_summands(c);
      if (ms.empty()) out.insert(out.end(), cs.begin(), cs.end());
      else if (cs.size() == 1)
        out.push_back({cs[0].negative, cs[0].magnitude == "1" ? ms : cs[0].magnitude + "*" + ms});
      else out.push_back({false, "(" + join_terms(cs) + ")*" + ms});
    }
    return join_terms(out);
  }

  template <class D>
  friend TruncatedElement<D> trunc_mul(const TruncatedElement<D>& a, const TruncatedElement<D>& b);

private:
  std::size_t n_ = 0;
  unsigned m_ = 0;
  CoeffMap c_;
};

/// Convolution product with every term of size > m discarded.
template <class C>
TruncatedElement<C> trunc_mul(const TruncatedElement<C>& a, const TruncatedElement<C>& b) {
  a.check_compatible(b);
  TruncatedElement<C> r(a.n_, a.m_);
  for (const auto& [ka, ca] : a.c_)
    for (const auto& [kb, cb] : b.c_)
      if (ka.size() + kb.size() <= a.m_) r.add_term(ka + kb, ca * cb);
  return r;
}

}  // namespace hsjet

#endif  // HSJET_TRUNCATED_HPP
