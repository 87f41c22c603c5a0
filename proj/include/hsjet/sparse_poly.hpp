#ifndef HSJET_SPARSE_POLY_HPP
#define HSJET_SPARSE_POLY_HPP

#include <hsjet/exact_arith.hpp>

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace hsjet {

/// Power product of symbols, stored as (symbol, exponent >= 1) pairs sorted by symbol.
///
/// Monomials are graded-lex ordered: total degree first, then the exponent of
/// the smallest symbol is the most significant digit.
template <class Sym>
class Monomial {
public:
  using Factor = std::pair<Sym, unsigned>;

  Monomial() = default;
  explicit Monomial(Sym s, unsigned e = 1) {
    if (e) {
      f_.emplace_back(std::move(s), e);
      deg_ = e;
    }
  }
  /// Factors may be unsorted and repeated; zero exponents are dropped.
  static Monomial from_factors(std::vector<Factor> fs) {
    std::sort(fs.begin(), fs.end(), [](const Factor& a, const Factor& b) { return a.first < b.first; });
    Monomial m;
    for (auto& [s, e] : fs) {
      if (e == 0) continue;
      if (!m.f_.empty() && m.f_.back().first == s) m.f_.back().second += e;
      else m.f_.emplace_back(s, e);
      m.deg_ += e;
    }
    return m;
  }

  const std::vector<Factor>& factors() const { return f_; }
  unsigned degree() const { return deg_; }
  bool is_one() const { return f_.empty(); }

  unsigned exponent(const Sym& s) const {
    for (const auto& [t, e] : f_)
      if (t == s) return e;
    return 0;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.f_.reserve(a.f_.size() + b.f_.size());
    auto i = a.f_.begin(), j = b.f_.begin();
    while (i != a.f_.end() || j != b.f_.end()) {
      if (j == b.f_.end() || (i != a.f_.end() && i->first < j->first)) r.f_.push_back(*i++);
      else if (i == a.f_.end() || j->first < i->first) r.f_.push_back(*j++);
      else {
        r.f_.emplace_back(i->first, i->second + j->second);
        ++i;
        ++j;
      }
    }
    r.deg_ = a.deg_ + b.deg_;
    return r;
  }

  bool divides(const Monomial& o) const {
    for (const auto& [s, e] : f_)
      if (o.exponent(s) < e) return false;
    return true;
  }

  /// o / *this; requires divides(o).
  Monomial quotient_of(const Monomial& o) const {
    std::vector<Factor> fs;
    for (const auto& [s, e] : o.f_) {
      unsigned mine = exponent(s);
      if (e > mine) fs.emplace_back(s, e - mine);
    }
    Monomial r;
    r.f_ = std::move(fs);
    r.deg_ = o.deg_ - deg_;
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.deg_ <=> b.deg_; c != 0) return c;
    auto i = a.f_.begin(), j = b.f_.begin();
    for (; i != a.f_.end() && j != b.f_.end(); ++i, ++j) {
      if (i->first == j->first) {
        if (i->second != j->second) return i->second <=> j->second;
        continue;
      }
      return i->first < j->first ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (i != a.f_.end()) return std::strong_ordering::greater;
    if (j != b.f_.end()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
  }

  template <class NameFn>
  std::string to_string(NameFn&& name) const {
    std::string s;
    for (const auto& [sym, e] : f_) {
      if (!s.empty()) s += "*";
      s += name(sym);
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
  }

private:
  std::vector<Factor> f_;
  unsigned deg_ = 0;
};

/// One signed summand of a rendered expression.
struct TermText {
  bool negative = false;
  std::string magnitude;
};

inline std::string join_terms(const std::vector<TermText>& terms) {
  if (terms.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i == 0) s += terms[i].negative ? "-" : "";
    else s += terms[i].negative ? " - " : " + ";
    s += terms[i].magnitude;
  }
  return s;
}

namespace detail {
template <class C>
bool coeff_is_zero(const C& c) {
  return is_zero(c);
}
}  // namespace detail

inline std::vector<TermText> summands(const Scalar& c) {
  if (c.is_negative()) return {{true, (-c).to_string()}};
  return {{false, c.to_string()}};
}

/// Sparse polynomial in symbols of type Sym with coefficients of type Coeff.
/// Zero coefficients are never stored.
template <class Sym, class Coeff>
class SparsePoly {
public:
  using Mono = Monomial<Sym>;
  using TermMap = std::map<Mono, Coeff>;

  SparsePoly() = default;
  explicit SparsePoly(const Coeff& c) {
    if (!detail::coeff_is_zero(c)) t_.emplace(Mono{}, c);
  }
  SparsePoly(const Mono& m, const Coeff& c) {
    if (!detail::coeff_is_zero(c)) t_.emplace(m, c);
  }

  const TermMap& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t term_count() const { return t_.size(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }

  /// Coefficient of the monomial 1 (zero-initialised Coeff when absent).
  Coeff constant_coeff() const {
    auto it = t_.find(Mono{});
    return it == t_.end() ? Coeff{} : it->second;
  }
  Coeff coeff(const Mono& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Coeff{} : it->second;
  }

  const std::pair<const Mono, Coeff>& leading() const { return *t_.rbegin(); }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : t_) d = std::max(d, m.degree());
    return d;
  }

  void add_term(const Mono& m, const Coeff& c) {
    if (is_zero_coeff(c)) return;
    auto [it, inserted] = t_.try_emplace(m, c);
    if (!inserted) {
      it->second = it->second + c;
      if (is_zero_coeff(it->second)) t_.erase(it);
    }
  }

  SparsePoly operator-() const {
    SparsePoly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
  }
  SparsePoly& operator+=(const SparsePoly& o) {
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
  }
  SparsePoly& operator-=(const SparsePoly& o) {
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
  }
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r;
    for (const auto& [ma, ca] : a.t_)
      for (const auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

  SparsePoly scaled(const Coeff& c) const {
    SparsePoly r;
    if (is_zero_coeff(c)) return r;
    for (const auto& [m, d] : t_) r.add_term(m, d * c);
    return r;
  }
  SparsePoly times_monomial(const Mono& m, const Coeff& c) const {
    SparsePoly r;
    if (is_zero_coeff(c)) return r;
    for (const auto& [n, d] : t_) r.add_term(n * m, d * c);
    return r;
  }

  SparsePoly pow(unsigned e) const {
    SparsePoly r(one_coeff()), b = *this;
    while (e) {
      if (e & 1U) r *= b;
      e >>= 1U;
      if (e) b *= b;
    }
    return r;
  }

  /// Apply fn to every coefficient, dropping results that vanish.
  template <class Fn>
  SparsePoly map_coeffs(Fn&& fn) const {
    SparsePoly r;
    for (const auto& [m, c] : t_) r.add_term(m, fn(c));
    return r;
  }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.t_ == b.t_; }

  /// Signed summands, highest term first unless ascending is set.
  template <class CoeffFn, class NameFn>
  std::vector<TermText> render(CoeffFn&& coeff_summands, NameFn&& name, bool ascending = false) const {
    std::vector<TermText> out;
    auto emit = [&](const Mono& m, const Coeff& c) {
      std::vector<TermText> cs = coeff_summands(c);
      if (m.is_one()) {
        out.insert(out.end(), cs.begin(), cs.end());
        return;
      }
      std::string ms = m.to_string(name);
      if (cs.size() == 1) {
        if (cs[0].magnitude == "1") out.push_back({cs[0].negative, ms});
        else out.push_back({cs[0].negative, cs[0].magnitude + "*" + ms});
      } else {
        out.push_back({false, "(" + join_terms(cs) + ")*" + ms});
      }
    };
    if (ascending)
      for (auto it = t_.begin(); it != t_.end(); ++it) emit(it->first, it->second);
    else
      for (auto it = t_.rbegin(); it != t_.rend(); ++it) emit(it->first, it->second);
    return out;
  }

  template <class CoeffFn, class NameFn>
  std::string to_string(CoeffFn&& coeff_summands, NameFn&& name, bool ascending = false) const {
    return join_terms(render(coeff_summands, name, ascending));
  }

private:
  static bool is_zero_coeff(const Coeff& c) { return detail::coeff_is_zero(c); }
  Coeff one_coeff() const {
    if (t_.empty()) return Coeff{1};
    return unit_like(t_.begin()->second);
  }

  TermMap t_;
};

template <class Sym, class Coeff>
bool is_zero(const SparsePoly<Sym, Coeff>& p) {
  return p.is_zero();
}

}  // namespace hsjet

#endif  // HSJET_SPARSE_POLY_HPP
