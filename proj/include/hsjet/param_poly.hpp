#ifndef HSJET_PARAM_POLY_HPP
#define HSJET_PARAM_POLY_HPP

#include <hsjet/exact_arith.hpp>
#include <hsjet/multi_index.hpp>
#include <hsjet/sparse_poly.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hsjet {

/// Polynomial in the field parameters s_0..s_{r-1}; symbol i is parameter i.
using ParamPoly = SparsePoly<unsigned, Scalar>;
using ParamMono = Monomial<unsigned>;

namespace detail {

inline ParamPoly param_const(const Scalar& c) { return ParamPoly(c); }

inline ParamPoly param_var(unsigned i, std::uint64_t p) { return ParamPoly(ParamMono(i), Scalar::one(p)); }

inline std::uint64_t char_of(const ParamPoly& a) {
  return a.is_zero() ? 0 : a.terms().begin()->second.characteristic();
}

inline std::optional<unsigned> max_var(const ParamPoly& a) {
  std::optional<unsigned> v;
  for (const auto& [m, c] : a.terms())
    if (!m.is_one()) {
      unsigned last = m.factors().back().first;
      if (!v || last > *v) v = last;
    }
  return v;
}

inline bool mentions(const ParamPoly& a, unsigned v) {
  for (const auto& [m, c] : a.terms())
    if (m.exponent(v)) return true;
  return false;
}

inline unsigned degree_in(const ParamPoly& a, unsigned v) {
  unsigned d = 0;
  for (const auto& [m, c] : a.terms()) d = std::max(d, m.exponent(v));
  return d;
}

/// a = sum_k c_k v^k with c_k free of v.
inline std::map<unsigned, ParamPoly> coeffs_in(const ParamPoly& a, unsigned v) {
  std::map<unsigned, ParamPoly> out;
  for (const auto& [m, c] : a.terms()) {
    unsigned e = m.exponent(v);
    std::vector<ParamMono::Factor> rest;
    for (const auto& f : m.factors())
      if (f.first != v) rest.push_back(f);
    out[e].add_term(ParamMono::from_factors(std::move(rest)), c);
  }
  return out;
}

inline ParamPoly lead_coeff_in(const ParamPoly& a, unsigned v) {
  auto cs = coeffs_in(a, v);
  return cs.rbegin()->second;
}

inline ParamPoly times_var_power(const ParamPoly& a, unsigned v, unsigned e) {
  if (e == 0) return a;
  return a.times_monomial(ParamMono(v, e), unit_like(a.terms().begin()->second));
}

/// Divide by the leading scalar coefficient.
inline ParamPoly make_monic(const ParamPoly& a) {
  if (a.is_zero()) return a;
  Scalar inv = a.leading().second.inverse();
  return a.scaled(inv);
}

}  // namespace detail

/// Exact quotient a / b; throws when b does not divide a.
inline ParamPoly exact_div(const ParamPoly& a, const ParamPoly& b) {
  if (b.is_zero()) throw Error("division by the zero polynomial");
  ParamPoly q, r = a;
  const auto& [lm, lc] = b.leading();
  Scalar lc_inv = lc.inverse();
  while (!r.is_zero()) {
    const auto& [rm, rc] = r.leading();
    if (!lm.divides(rm)) throw Error("inexact polynomial division");
    ParamMono qm = lm.quotient_of(rm);
    Scalar qc = rc * lc_inv;
    q.add_term(qm, qc);
    r -= b.times_monomial(qm, qc);
  }
  return q;
}

ParamPoly param_gcd(const ParamPoly& a, const ParamPoly& b);

namespace detail {

/// Pseudo-remainder of a by b with respect to v.
inline ParamPoly prem(ParamPoly a, const ParamPoly& b, unsigned v) {
  unsigned db = degree_in(b, v);
  ParamPoly lb = lead_coeff_in(b, v);
  while (!a.is_zero() && mentions(a, v) && degree_in(a, v) >= db) {
    unsigned da = degree_in(a, v);
    ParamPoly la = lead_coeff_in(a, v);
    a = a * lb - times_var_power(la * b, v, da - db);
  }
  return a;
}

inline ParamPoly content_in(const ParamPoly& a, unsigned v) {
  ParamPoly g;
  for (const auto& [e, c] : coeffs_in(a, v)) {
    g = param_gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

}  // namespace detail

/// Monic gcd of two parameter polynomials (gcd(0, 0) = 0).
///
/// Recursive primitive polynomial remainder sequence on the highest
/// parameter, with contents computed in the remaining parameters.
inline ParamPoly param_gcd(const ParamPoly& a, const ParamPoly& b) {
  using namespace detail;
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  std::uint64_t p = char_of(a) ? char_of(a) : char_of(b);
  if (a.is_constant() || b.is_constant()) return ParamPoly(Scalar::one(p));
  auto va = max_var(a), vb = max_var(b);
  unsigned v = std::max(*va, *vb);
  if (!mentions(a, v)) return param_gcd(a, content_in(b, v));
  if (!mentions(b, v)) return param_gcd(content_in(a, v), b);

  ParamPoly ca = content_in(a, v), cb = content_in(b, v);
  ParamPoly c = param_gcd(ca, cb);
  ParamPoly f = exact_div(a, ca), g = exact_div(b, cb);
  if (degree_in(f, v) < degree_in(g, v)) std::swap(f, g);
  while (!g.is_zero() && mentions(g, v)) {
    ParamPoly r = prem(f, g, v);
    f = g;
    if (r.is_zero()) {
      g = ParamPoly{};
    } else if (!mentions(r, v)) {
      f = ParamPoly(Scalar::one(p));
      g = ParamPoly{};
    } else {
      g = make_monic(exact_div(r, content_in(r, v)));
    }
  }
  if (!g.is_zero()) f = ParamPoly(Scalar::one(p));  // g became free of v: primitive parts coprime
  f = exact_div(f, content_in(f, v));
  return make_monic(f * c);
}

/// D_alpha on a polynomial: s^e -> prod_i C(e_i, alpha_i) s^(e - alpha), over
/// the first alpha.length() parameters.
inline ParamPoly hasse_derive_poly(const MultiIndex& alpha, const ParamPoly& a, const FieldDescriptor& field) {
  if (alpha.is_zero()) return a;
  ParamPoly r;
  for (const auto& [m, c] : a.terms()) {
    mpz_class coef = 1;
    std::vector<ParamMono::Factor> fs;
    bool vanish = false;
    for (std::size_t i = 0; i < alpha.length() && !vanish; ++i) {
      unsigned e = m.exponent(static_cast<unsigned>(i));
      if (alpha[i] > e) vanish = true;
      else coef *= binom_exact(e, alpha[i]);
    }
    if (vanish) continue;
    for (const auto& [s, e] : m.factors()) {
      unsigned take = s < alpha.length() ? alpha[s] : 0;
      if (e > take) fs.emplace_back(s, e - take);
    }
    r.add_term(ParamMono::from_factors(std::move(fs)), c * Scalar::mod(coef, field.characteristic));
  }
  return r;
}

inline std::string param_poly_string(const ParamPoly& a, const std::vector<std::string>& names) {
  return a.to_string([](const Scalar& c) { return summands(c); },
                     [&](unsigned i) { return i < names.size() ? names[i] : "s" + std::to_string(i + 1); });
}

}  // namespace hsjet

#endif  // HSJET_PARAM_POLY_HPP
