#ifndef HSJET_BASE_FIELD_HPP
#define HSJET_BASE_FIELD_HPP

#include <hsjet/exact_arith.hpp>
#include <hsjet/multi_index.hpp>
#include <hsjet/param_poly.hpp>
#include <hsjet/truncated.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <vector>

namespace hsjet {

/// Element of the rational function field k_0(s_1..s_r).
///
/// Always stored in lowest terms with a monic denominator (leading
/// coefficient 1 in graded-lex order), so equality is structural.
class BaseElem {
public:
  BaseElem() : den_(Scalar(1)) {}
  BaseElem(long v) : BaseElem(Scalar(v)) {}  // NOLINT: literals
  BaseElem(const Scalar& c) : num_(c), den_(Scalar::one(c.characteristic())), p_(c.characteristic()) {}  // NOLINT
  BaseElem(ParamPoly num, ParamPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
  explicit BaseElem(ParamPoly num) : BaseElem(std::move(num), ParamPoly(Scalar(1))) {}

  /// The parameter s_i of the given field.
  static BaseElem param(const FieldDescriptor& field, unsigned i) {
    if (i >= field.parameter_count()) throw Error("parameter index out of range");
    return BaseElem(detail::param_var(i, field.characteristic), ParamPoly(Scalar::one(field.characteristic)));
  }
  static BaseElem scalar(const FieldDescriptor& field, long v) { return BaseElem(Scalar::from_int(v, field.characteristic)); }

  /// num / b^k where b is a normalized denominator: any cancellation must
  /// involve a factor of b, so a gcd against b decides whether one is needed.
  static BaseElem over_power(ParamPoly num, const ParamPoly& b, const ParamPoly& b_pow_k) {
    if (num.is_zero()) return BaseElem{};
    std::uint64_t p = std::max(char_scan(num), char_scan(b));
    if (param_gcd(num, b).is_constant()) return from_parts(std::move(num), b_pow_k, p);
    return BaseElem(std::move(num), b_pow_k);
  }

  const ParamPoly& numerator() const { return num_; }
  const ParamPoly& denominator() const { return den_; }
  std::uint64_t characteristic() const { return p_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant_scalar() const { return num_.is_constant() && den_.is_constant(); }
  bool is_one() const { return is_constant_scalar() && num_.constant_coeff().is_one(); }

  BaseElem operator-() const {
    BaseElem r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend BaseElem operator+(const BaseElem& a, const BaseElem& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const std::uint64_t p = std::max(a.p_, b.p_);
    if (a.is_polynomial() && b.is_polynomial()) return from_parts(a.num_ + b.num_, a.den_, p);
    if (a.den_ == b.den_) return reduced(a.num_ + b.num_, a.den_, p);
    // Henrici: only the common part g of the denominators can cancel.
    ParamPoly g = param_gcd(a.den_, b.den_);
    if (g.is_constant()) return from_parts(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, p);
    ParamPoly bg = exact_div(a.den_, g), dg = exact_div(b.den_, g);
    ParamPoly t = a.num_ * dg + b.num_ * bg;
    if (t.is_zero()) return BaseElem{};
    ParamPoly g2 = param_gcd(t, g);
    if (!g2.is_constant()) {
      t = exact_div(t, g2);
      g = exact_div(g, g2);
    }
    return from_parts(std::move(t), bg * dg * g, p);
  }
  friend BaseElem operator-(const BaseElem& a, const BaseElem& b) { return a + (-b); }
  friend BaseElem operator*(const BaseElem& a, const BaseElem& b) {
    if (a.is_zero() || b.is_zero()) return BaseElem{};
    const std::uint64_t p = std::max(a.p_, b.p_);
    if (a.is_polynomial() && b.is_polynomial()) return from_parts(a.num_ * b.num_, a.den_, p);
    // cross-cancel: a/b * c/d with gcd(a,d) and gcd(c,b)
    ParamPoly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
    cancel_common(an, bd);
    cancel_common(bn, ad);
    return from_parts(an * bn, ad * bd, p);
  }
  friend BaseElem operator/(const BaseElem& a, const BaseElem& b) { return a * b.inverse(); }
  BaseElem& operator+=(const BaseElem& o) { return *this = *this + o; }
  BaseElem& operator-=(const BaseElem& o) { return *this = *this - o; }
  BaseElem& operator*=(const BaseElem& o) { return *this = *this * o; }

  BaseElem inverse() const {
    if (is_zero()) throw Error("division by zero in the base field");
    return BaseElem(den_, num_);
  }

  BaseElem pow(unsigned e) const {
    BaseElem r = unit(), b = *this;
    while (e) {
      if (e & 1U) r *= b;
      e >>= 1U;
      if (e) b *= b;
    }
    return r;
  }

  BaseElem unit() const { return BaseElem(Scalar::one(p_)); }

  friend bool operator==(const BaseElem& a, const BaseElem& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  /// Signed summands for embedding in larger expressions: one per term for a
  /// polynomial, a single "num/den" piece otherwise.
  std::vector<TermText> summands(const std::vector<std::string>& names) const {
    auto sc = [](const Scalar& c) { return hsjet::summands(c); };
    auto nm = [&](unsigned i) { return i < names.size() ? names[i] : "s" + std::to_string(i + 1); };
    if (num_.is_zero()) return {{false, "0"}};
    if (is_polynomial()) return num_.render(sc, nm);
    std::vector<TermText> nt = num_.render(sc, nm);
    TermText piece;
    std::string ns;
    if (nt.size() == 1) {
      piece.negative = nt[0].negative;
      ns = nt[0].magnitude;
    } else {
      ns = "(" + join_terms(nt) + ")";
    }
    std::vector<TermText> dt = den_.render(sc, nm);
    bool simple_den = dt.size() == 1 && den_.terms().begin()->first.factors().size() <= 1 &&
                      den_.leading().second.is_one();
    piece.magnitude = ns + "/" + (simple_den ? dt[0].magnitude : "(" + join_terms(dt) + ")");
    return {piece};
  }

  std::string to_string(const std::vector<std::string>& names) const { return join_terms(summands(names)); }

private:
  /// num/den already in lowest terms; only the denominator's scale is fixed.
  static BaseElem from_parts(ParamPoly num, ParamPoly den, std::uint64_t p) {
    BaseElem r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.p_ = p;
    r.coerce_char();
    r.scale_denominator();
    return r;
  }

  /// num/den with den already reduced against nothing; a gcd is taken.
  static BaseElem reduced(ParamPoly num, ParamPoly den, std::uint64_t p) {
    BaseElem r = from_parts(std::move(num), std::move(den), p);
    r.normalize();
    return r;
  }

  static void cancel_common(ParamPoly& x, ParamPoly& y) {
    if (y.is_constant() || x.is_constant()) return;
    ParamPoly g = param_gcd(x, y);
    if (g.is_constant()) return;
    x = exact_div(x, g);
    y = exact_div(y, g);
  }

  static std::uint64_t char_scan(const ParamPoly& a) {
    for (const auto& [m, c] : a.terms())
      if (c.characteristic()) return c.characteristic();
    return 0;
  }

  void coerce_char() {
    std::uint64_t p = std::max({p_, char_scan(num_), char_scan(den_)});
    if (p == 0) return;
    p_ = p;
    auto to_p = [p](const Scalar& c) { return c.in_char(p); };
    num_ = num_.map_coeffs(to_p);
    den_ = den_.map_coeffs(to_p);
    if (den_.is_zero()) throw Error("zero denominator");
  }

  void scale_denominator() {
    if (den_.is_zero()) throw Error("zero denominator");
    if (num_.is_zero()) {
      den_ = ParamPoly(Scalar::one(p_));
      return;
    }
    Scalar lc = den_.leading().second;
    if (!lc.is_one()) {
      Scalar inv = lc.inverse();
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  void normalize() {
    coerce_char();
    if (den_.is_zero()) throw Error("zero denominator");
    if (!num_.is_zero() && !den_.is_constant()) cancel_common(num_, den_);
    scale_denominator();
  }

  ParamPoly num_;
  ParamPoly den_;
  std::uint64_t p_ = 0;
};

inline bool is_zero(const BaseElem& a) { return a.is_zero(); }
inline BaseElem unit_like(const BaseElem& a) { return a.unit(); }

namespace detail {

/// Tabulates D_gamma(a/b) for gamma below a bound using the quotient-rule
/// recursion D_gamma(1/b) = -(1/b) sum_{delta < gamma} D_{gamma-delta}(b) D_delta(1/b),
/// carried on numerators over the common denominator b^(|gamma|+1).
class QuotientRule {
public:
  QuotientRule(const BaseElem& a, const FieldDescriptor& field) : a_(a), field_(field) {}

  BaseElem derive(const MultiIndex& alpha) {
    const ParamPoly& num = a_.numerator();
    const ParamPoly& den = a_.denominator();
    if (a_.is_polynomial()) return BaseElem(hasse_derive_poly(alpha, num, field_), den);
    ParamPoly total;
    for (const MultiIndex& gamma : sub_indices(alpha)) {
      ParamPoly dnum = hasse_derive_poly(alpha - gamma, num, field_);
      if (dnum.is_zero()) continue;
      total += dnum * inverse_numerator(gamma) * den_power(alpha.size() - gamma.size());
    }
    return BaseElem::over_power(std::move(total), den, den_power(alpha.size() + 1));
  }

private:
  /// P_gamma with D_gamma(1/b) = P_gamma / b^(|gamma|+1).
  const ParamPoly& inverse_numerator(const MultiIndex& gamma) {
    if (auto it = inv_.find(gamma); it != inv_.end()) return it->second;
    const ParamPoly& b = a_.denominator();
    ParamPoly acc;
    if (gamma.is_zero()) {
      acc = ParamPoly(Scalar::one(field_.characteristic));
    } else {
      for (const MultiIndex& delta : sub_indices(gamma)) {
        if (delta == gamma) continue;
        ParamPoly db = hasse_derive_poly(gamma - delta, b, field_);
        if (db.is_zero()) continue;
        acc -= db * inverse_numerator(delta) * den_power(gamma.size() - delta.size() - 1);
      }
    }
    return inv_.emplace(gamma, std::move(acc)).first->second;
  }

  const ParamPoly& den_power(unsigned k) {
    while (pow_.size() <= k) {
      if (pow_.empty()) pow_.push_back(ParamPoly(Scalar::one(field_.characteristic)));
      else pow_.push_back(pow_.back() * a_.denominator());
    }
    return pow_[k];
  }

  const BaseElem& a_;
  const FieldDescriptor& field_;
  std::map<MultiIndex, ParamPoly> inv_;
  std::deque<ParamPoly> pow_;  // references stay valid across push_back
};

}  // namespace detail

/// Mixed Hasse derivative D_alpha(a); alpha has one entry per derivation.
inline BaseElem hasse_derive(const MultiIndex& alpha, const BaseElem& a, const FieldDescriptor& field) {
  if (alpha.length() != field.derivation_count) throw Error("multi-index length does not match derivation count");
  if (alpha.is_zero() || a.is_zero()) return a;
  detail::QuotientRule qr(a, field);
  return qr.derive(alpha);
}

/// D_alpha(a) for every |alpha| <= m, sharing the quotient-rule tables.
inline std::map<MultiIndex, BaseElem> hasse_table(const BaseElem& a, unsigned m, const FieldDescriptor& field) {
  std::map<MultiIndex, BaseElem> out;
  detail::QuotientRule qr(a, field);
  for (const MultiIndex& alpha : enumerate_multiindices(field.derivation_count, m))
    out.emplace(alpha, alpha.is_zero() ? a : qr.derive(alpha));
  return out;
}

namespace detail {

/// p(s_1 + t_1, ..., s_n + t_n) expanded in the truncated ring.
inline TruncatedElement<BaseElem> shift_substitute(const ParamPoly& poly, unsigned m, const FieldDescriptor& field) {
  const std::size_t n = field.derivation_count;
  const std::uint64_t p = field.characteristic;
  TruncatedElement<BaseElem> one = TruncatedElement<BaseElem>::constant(n, m, BaseElem(Scalar::one(p)));
  std::map<std::pair<unsigned, unsigned>, TruncatedElement<BaseElem>> powers;
  auto shifted_power = [&](unsigned i, unsigned e) -> const TruncatedElement<BaseElem>& {
    auto key = std::make_pair(i, e);
    if (auto it = powers.find(key); it != powers.end()) return it->second;
    TruncatedElement<BaseElem> lin = TruncatedElement<BaseElem>::constant(n, m, BaseElem::param(field, i)) +
                                     TruncatedElement<BaseElem>::monomial(m, MultiIndex::unit(n, i), BaseElem(Scalar::one(p)));
    TruncatedElement<BaseElem> r = one;
    for (unsigned k = 0; k < e; ++k) r = trunc_mul(r, lin);
    return powers.emplace(key, std::move(r)).first->second;
  };
  TruncatedElement<BaseElem> total(n, m);
  for (const auto& [mono, c] : poly.terms()) {
    std::vector<ParamMono::Factor> fixed;
    TruncatedElement<BaseElem> term = one;
    for (const auto& [i, e] : mono.factors()) {
      if (i < n) term = trunc_mul(term, shifted_power(i, e));
      else fixed.emplace_back(i, e);
    }
    BaseElem coeff(ParamPoly(ParamMono::from_factors(std::move(fixed)), c));
    total = total + term.scaled(coeff);
  }
  return total;
}

/// 1/u for u with invertible constant term, by the truncated geometric series
/// u^{-1} = u_0^{-1} sum_k (-(u - u_0)/u_0)^k.
inline TruncatedElement<BaseElem> series_inverse(const TruncatedElement<BaseElem>& u) {
  const MultiIndex zero = MultiIndex::zero(u.t_count());
  BaseElem u0 = u.coeff(zero);
  if (u0.is_zero()) throw Error("series with zero constant term is not invertible");
  BaseElem inv0 = u0.inverse();
  TruncatedElement<BaseElem> nil = u - TruncatedElement<BaseElem>::constant(u.t_count(), u.order_bound(), u0);
  TruncatedElement<BaseElem> q = nil.scaled(-inv0);
  TruncatedElement<BaseElem> power = TruncatedElement<BaseElem>::constant(u.t_count(), u.order_bound(), u0.unit());
  TruncatedElement<BaseElem> sum = power;
  for (unsigned k = 1; k <= u.order_bound(); ++k) {
    power = trunc_mul(power, q);
    sum = sum + power;
  }
  return sum.scaled(inv0);
}

}  // namespace detail

/// Taylor expansion sum_{|alpha|<=m} D_alpha(a) t^alpha computed without Hasse
/// derivatives: substitute s_i -> s_i + t_i and invert the denominator as a
/// truncated series.
inline TruncatedElement<BaseElem> taylor_expand(const BaseElem& a, unsigned m, const FieldDescriptor& field) {
  auto num = detail::shift_substitute(a.numerator(), m, field);
  if (a.is_polynomial()) return num.scaled(a.denominator().constant_coeff().inverse());
  auto den = detail::shift_substitute(a.denominator(), m, field);
  return trunc_mul(num, detail::series_inverse(den));
}

}  // namespace hsjet

#endif  // HSJET_BASE_FIELD_HPP
