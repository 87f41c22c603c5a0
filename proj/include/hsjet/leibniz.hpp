#ifndef HSJET_LEIBNIZ_HPP
#define HSJET_LEIBNIZ_HPP

#include <hsjet/base_field.hpp>
#include <hsjet/multi_index.hpp>
#include <hsjet/sparse_poly.hpp>

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace hsjet {

/// Extends a higher derivation from symbols and coefficients to sparse
/// polynomials by additivity and the generalized Leibniz rule
/// d_alpha(fg) = sum_{beta+gamma=alpha} d_beta(f) d_gamma(g).
///
/// sym_rule(gamma, s) returns the scalar and symbol of d_gamma(s), or nullopt
/// when it vanishes; coeff_rule(beta, c) returns d_beta(c).
template <class Sym, class SymRule, class CoeffRule>
SparsePoly<Sym, BaseElem> leibniz_derive(const MultiIndex& alpha, const SparsePoly<Sym, BaseElem>& f,
                                         SymRule&& sym_rule, CoeffRule&& coeff_rule) {
  using Poly = SparsePoly<Sym, BaseElem>;
  using Mono = typename Poly::Mono;
  if (alpha.is_zero()) return f;
  const std::vector<MultiIndex> below = sub_indices(alpha);
  Poly result;
  for (const auto& [mono, c] : f.terms()) {
    // table[gamma] = d_gamma of the factors processed so far
    std::map<MultiIndex, Poly> table;
    table.emplace(MultiIndex::zero(alpha.length()), Poly(Mono{}, unit_like(c)));
    for (const auto& [sym, e] : mono.factors()) {
      std::vector<std::pair<MultiIndex, Poly>> sym_terms;
      for (const MultiIndex& delta : below) {
        auto d = sym_rule(delta, sym);
        if (d && !d->first.is_zero()) sym_terms.emplace_back(delta, Poly(Mono(d->second), BaseElem(d->first)));
      }
      for (unsigned rep = 0; rep < e; ++rep) {
        std::map<MultiIndex, Poly> next;
        for (const auto& [gamma, g] : table)
          for (const auto& [delta, s] : sym_terms) {
            MultiIndex sum = gamma + delta;
            if (!sum.divides(alpha)) continue;
            next[sum] += g * s;
          }
        table = std::move(next);
      }
    }
    for (const auto& [gamma, g] : table) {
      BaseElem dc = coeff_rule(alpha - gamma, c);
      if (!dc.is_zero()) result += g.scaled(dc);
    }
  }
  return result;
}

}  // namespace hsjet

#endif  // HSJET_LEIBNIZ_HPP
