#ifndef HSJET_DIFF_POLY_HPP
#define HSJET_DIFF_POLY_HPP

#include <hsjet/base_field.hpp>
#include <hsjet/leibniz.hpp>
#include <hsjet/multi_index.hpp>
#include <hsjet/sparse_poly.hpp>
#include <hsjet/truncated.hpp>

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hsjet {

/// The symbol x_var^(order); order 0 is x_var itself.
struct DiffSymbol {
  unsigned var = 0;
  MultiIndex order;

  friend bool operator==(const DiffSymbol&, const DiffSymbol&) = default;
  friend std::strong_ordering operator<=>(const DiffSymbol& a, const DiffSymbol& b) {
    if (auto c = a.var <=> b.var; c != 0) return c;
    return a.order <=> b.order;
  }
};

using DiffMonomial = Monomial<DiffSymbol>;
using DiffPoly = SparsePoly<DiffSymbol, BaseElem>;

/// Prolongation: d_alpha acts on base coefficients through the field's
/// derivations. Jet: base coefficients are constants.
enum class DerivationMode { Prolongation, Jet };

inline const char* mode_name(DerivationMode m) { return m == DerivationMode::Jet ? "jet" : "prolong"; }

inline DiffSymbol make_symbol(unsigned var, const MultiIndex& order) { return DiffSymbol{var, order}; }

inline DiffPoly diff_var(unsigned var, std::size_t n, std::uint64_t p = 0) {
  return DiffPoly(DiffMonomial(DiffSymbol{var, MultiIndex::zero(n)}), BaseElem(Scalar::one(p)));
}
inline DiffPoly diff_symbol(const DiffSymbol& s, std::uint64_t p = 0) {
  return DiffPoly(DiffMonomial(s), BaseElem(Scalar::one(p)));
}
inline DiffPoly diff_const(const BaseElem& c) { return DiffPoly(c); }

/// d_beta(x^(order)) = prod_i C(beta_i + order_i, beta_i) x^(order + beta).
inline std::pair<Scalar, DiffSymbol> symbol_derive(const MultiIndex& beta, const DiffSymbol& sym,
                                                   const FieldDescriptor& field) {
  return {comp_coeff(beta, sym.order, field), DiffSymbol{sym.var, sym.order + beta}};
}

/// Coefficient rule of the universal derivation for the given mode.
inline BaseElem coefficient_derive(const MultiIndex& beta, const BaseElem& c, DerivationMode mode,
                                   const FieldDescriptor& field) {
  if (beta.is_zero()) return c;
  if (mode == DerivationMode::Jet) return BaseElem{};
  return hasse_derive(beta, c, field);
}

/// The universal derivation d_alpha extended to differential polynomials.
inline DiffPoly apply_d(const MultiIndex& alpha, const DiffPoly& f, DerivationMode mode, const FieldDescriptor& field) {
  if (alpha.length() != field.derivation_count) throw Error("multi-index length does not match derivation count");
  return leibniz_derive(
      alpha, f,
      [&](const MultiIndex& g, const DiffSymbol& s) -> std::optional<std::pair<Scalar, DiffSymbol>> {
        if (s.order.length() != alpha.length()) throw Error("symbol order length does not match derivation count");
        return symbol_derive(g, s, field);
      },
      [&](const MultiIndex& b, const BaseElem& c) { return coefficient_derive(b, c, mode, field); });
}

/// Independent route to d_alpha f: substitute every x^(beta) by
/// sum_gamma C(beta+gamma, gamma) x^(beta+gamma) t^gamma and every base
/// coefficient by its Taylor expansion (prolongation) or itself (jet),
/// multiply out in the truncated ring at bound |alpha|, and read off t^alpha.
inline DiffPoly taylor_oracle(const MultiIndex& alpha, const DiffPoly& f, DerivationMode mode,
                              const FieldDescriptor& field) {
  using Series = TruncatedElement<DiffPoly>;
  const std::size_t n = field.derivation_count;
  if (alpha.length() != n) throw Error("multi-index length does not match derivation count");
  const unsigned m = alpha.size();
  const auto indices = enumerate_multiindices(n, m);
  const std::uint64_t p = field.characteristic;

  std::map<DiffSymbol, Series> sym_series;
  auto series_of = [&](const DiffSymbol& s) -> const Series& {
    if (auto it = sym_series.find(s); it != sym_series.end()) return it->second;
    Series out(n, m);
    for (const MultiIndex& gamma : indices) {
      mpz_class c = 1;
      for (std::size_t i = 0; i < n; ++i) c *= binom_exact(s.order[i] + gamma[i], gamma[i]);
      out.add_term(gamma, diff_symbol(DiffSymbol{s.var, s.order + gamma}, p).scaled(BaseElem(Scalar::mod(c, p))));
    }
    return sym_series.emplace(s, std::move(out)).first->second;
  };

  Series total(n, m);
  for (const auto& [mono, c] : f.terms()) {
    Series term(n, m);
    if (mode == DerivationMode::Prolongation)
      term = taylor_expand(c, m, field).map_coeffs([](const BaseElem& b) { return diff_const(b); });
    else term = Series::constant(n, m, diff_const(c));
    for (const auto& [sym, e] : mono.factors())
      for (unsigned k = 0; k < e; ++k) term = trunc_mul(term, series_of(sym));
    total = total + term;
  }
  return total.coeff(alpha);
}

/// Evaluate f with every symbol replaced by a base-field value.
inline BaseElem poly_eval(const DiffPoly& f, const std::map<DiffSymbol, BaseElem>& assignment) {
  BaseElem total;
  for (const auto& [mono, c] : f.terms()) {
    BaseElem v = c;
    for (const auto& [sym, e] : mono.factors()) {
      auto it = assignment.find(sym);
      if (it == assignment.end()) throw Error("unassigned symbol in evaluation");
      v *= it->second.pow(e);
    }
    total += v;
  }
  return total;
}

/// Largest |order| of any symbol in f.
inline unsigned max_symbol_order(const DiffPoly& f) {
  unsigned r = 0;
  for (const auto& [mono, c] : f.terms())
    for (const auto& [s, e] : mono.factors()) r = std::max(r, s.order.size());
  return r;
}

/// Names used when rendering symbols and coefficients.
struct NameTable {
  std::vector<std::string> vars;
  std::vector<std::string> params;

  std::string var(unsigned i) const { return i < vars.size() ? vars[i] : "x" + std::to_string(i + 1); }
};

/// "x", "d2x" (single derivation) or "d[2,0]x".
inline std::string symbol_string(const DiffSymbol& s, const NameTable& names) {
  const std::string base = names.var(s.var);
  if (s.order.is_zero()) return base;
  if (s.order.length() == 1) return "d" + std::to_string(s.order[0]) + base;
  std::string idx;
  for (std::size_t i = 0; i < s.order.length(); ++i) idx += (i ? "," : "") + std::to_string(s.order[i]);
  return "d[" + idx + "]" + base;
}

inline std::string diff_poly_string(const DiffPoly& f, const NameTable& names) {
  return f.to_string([&](const BaseElem& c) { return c.summands(names.params); },
                     [&](const DiffSymbol& s) { return symbol_string(s, names); });
}

}  // namespace hsjet

#endif  // HSJET_DIFF_POLY_HPP
