#ifndef HSJET_LAYERED_HPP
#define HSJET_LAYERED_HPP

#include <hsjet/diff_poly.hpp>
#include <hsjet/leibniz.hpp>

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace hsjet {

/// A derivation layer either acts on base coefficients (Prolong) or kills them (Jet).
enum class LayerKind { Prolong, Jet };

inline char layer_letter(LayerKind k) { return k == LayerKind::Jet ? 'J' : 'P'; }

/// The symbol X_i Y_j x: inner derivation Y_j applied first, outer X_i second.
/// The same derivation family drives both layers (one base derivation).
struct LayeredSymbol {
  unsigned var = 0;
  LayerKind outer_kind = LayerKind::Prolong;
  unsigned outer = 0;
  LayerKind inner_kind = LayerKind::Prolong;
  unsigned inner = 0;

  friend bool operator==(const LayeredSymbol&, const LayeredSymbol&) = default;
  friend std::strong_ordering operator<=>(const LayeredSymbol& a, const LayeredSymbol& b) {
    if (auto c = a.var <=> b.var; c != 0) return c;
    if (auto c = a.outer + a.inner <=> b.outer + b.inner; c != 0) return c;
    if (auto c = a.outer <=> b.outer; c != 0) return c;
    if (auto c = a.outer_kind <=> b.outer_kind; c != 0) return c;
    return a.inner_kind <=> b.inner_kind;
  }
};

using LayeredMonomial = Monomial<LayeredSymbol>;
using LayeredPoly = SparsePoly<LayeredSymbol, BaseElem>;

/// Kinds of the two layers of a layered ring.
struct Layering {
  LayerKind outer;
  LayerKind inner;
};

/// d_i delta_j: both layers act on coefficients.
inline constexpr Layering kProlongOfProlong{LayerKind::Prolong, LayerKind::Prolong};
/// d_i partial_j: prolongation over a jet layer.
inline constexpr Layering kProlongOfJet{LayerKind::Prolong, LayerKind::Jet};
/// Jet over a prolongation layer.
inline constexpr Layering kJetOfProlong{LayerKind::Jet, LayerKind::Prolong};

/// Raised when a layered computation would produce an outer order above the bound.
class TruncationOverflow : public Error {
public:
  using Error::Error;
};

namespace detail {

inline void require_single_derivation(const FieldDescriptor& field) {
  if (field.derivation_count > 1) throw Error("layered maps need at most one base derivation");
}

/// D_k c for the single base derivation; k > 0 kills everything when there is none.
inline BaseElem base_derive(unsigned k, const BaseElem& c, const FieldDescriptor& field) {
  if (k == 0) return c;
  if (field.derivation_count == 0) return BaseElem{};
  return hasse_derive(MultiIndex{k}, c, field);
}

inline BaseElem layer_coefficient(unsigned k, const BaseElem& c, LayerKind kind, const FieldDescriptor& field) {
  if (k == 0) return c;
  return kind == LayerKind::Jet ? BaseElem{} : base_derive(k, c, field);
}

}  // namespace detail

inline LayeredPoly layered_symbol(unsigned var, unsigned outer, unsigned inner, Layering l, std::uint64_t p = 0) {
  return LayeredPoly(LayeredMonomial(LayeredSymbol{var, l.outer, outer, l.inner, inner}), BaseElem(Scalar::one(p)));
}

/// Embed an order-zero polynomial as outer order 0, inner order 0.
inline LayeredPoly embed_layered(const DiffPoly& h, Layering l) {
  LayeredPoly out;
  for (const auto& [mono, c] : h.terms()) {
    std::vector<LayeredMonomial::Factor> fs;
    for (const auto& [s, e] : mono.factors()) {
      if (!s.order.is_zero()) throw Error("layered embedding expects order-zero symbols");
      fs.emplace_back(LayeredSymbol{s.var, l.outer, 0, l.inner, 0}, e);
    }
    out.add_term(LayeredMonomial::from_factors(std::move(fs)), c);
  }
  return out;
}

/// Inner derivation Y_j on a polynomial whose symbols all have outer order 0.
inline LayeredPoly inner_derive(unsigned j, const LayeredPoly& p, LayerKind kind, const FieldDescriptor& field) {
  detail::require_single_derivation(field);
  return leibniz_derive(
      MultiIndex{j}, p,
      [&](const MultiIndex& g, const LayeredSymbol& s) -> std::optional<std::pair<Scalar, LayeredSymbol>> {
        if (s.outer != 0) throw Error("inner derivation applied above an outer layer");
        LayeredSymbol r = s;
        r.inner += g[0];
        return std::make_pair(binom(s.inner + g[0], g[0], field), r);
      },
      [&](const MultiIndex& b, const BaseElem& c) { return detail::layer_coefficient(b[0], c, kind, field); });
}

/// Outer derivation X_a with X_a(X_b Y_c x) = C(a+b, a) X_{a+b} Y_c x; orders above N are an error.
inline LayeredPoly outer_derive(unsigned a, const LayeredPoly& p, LayerKind kind, unsigned bound,
                                const FieldDescriptor& field) {
  detail::require_single_derivation(field);
  return leibniz_derive(
      MultiIndex{a}, p,
      [&](const MultiIndex& g, const LayeredSymbol& s) -> std::optional<std::pair<Scalar, LayeredSymbol>> {
        if (s.outer + g[0] > bound) throw TruncationOverflow("outer order exceeds the truncation bound");
        LayeredSymbol r = s;
        r.outer += g[0];
        return std::make_pair(binom(s.outer + g[0], g[0], field), r);
      },
      [&](const MultiIndex& b, const BaseElem& c) { return detail::layer_coefficient(b[0], c, kind, field); });
}

/// X_i Y_j h for an order-zero polynomial h.
inline LayeredPoly two_layer_derive(unsigned i, unsigned j, const DiffPoly& h, Layering l, unsigned bound,
                                    const FieldDescriptor& field) {
  return outer_derive(i, inner_derive(j, embed_layered(h, l), l.inner, field), l.outer, bound, field);
}

/// Ring map fixing coefficients and sending each symbol to image(symbol).
template <class ImageFn>
LayeredPoly map_layered_symbols(const LayeredPoly& p, ImageFn&& image) {
  std::map<LayeredSymbol, LayeredPoly> cache;
  LayeredPoly out;
  for (const auto& [mono, c] : p.terms()) {
    LayeredPoly term(c);
    for (const auto& [s, e] : mono.factors()) {
      auto it = cache.find(s);
      if (it == cache.end()) it = cache.emplace(s, image(s)).first;
      term = term * it->second.pow(e);
    }
    out += term;
  }
  return out;
}

namespace detail {

/// sum_{k+l=j} sign^k C(i+k, i) X_{i+k} Y_l x in the target layering.
inline LayeredPoly convolution_image(const LayeredSymbol& s, Layering from, Layering to, bool alternate,
                                     unsigned bound, const FieldDescriptor& field) {
  if (s.outer_kind != from.outer || s.inner_kind != from.inner) throw Error("symbol is not in the source layering");
  if (s.outer + s.inner > bound) throw TruncationOverflow("outer order exceeds the truncation bound");
  LayeredPoly out;
  for (unsigned k = 0; k <= s.inner; ++k) {
    Scalar c = binom(s.outer + k, s.outer, field);
    if (alternate && k % 2 == 1) c = -c;
    LayeredSymbol t{s.var, to.outer, s.outer + k, to.inner, s.inner - k};
    out += LayeredPoly(LayeredMonomial(t), BaseElem(c));
  }
  return out;
}

}  // namespace detail

/// phi(d_i delta_j x) = D_i(sum_{k+l=j} d_k partial_l x).
inline LayeredPoly phi(const LayeredPoly& p, unsigned bound, const FieldDescriptor& field) {
  detail::require_single_derivation(field);
  return map_layered_symbols(p, [&](const LayeredSymbol& s) {
    return detail::convolution_image(s, kProlongOfProlong, kProlongOfJet, false, bound, field);
  });
}

/// psi(d_i partial_j x) = D_i(sum_{k+l=j} (-1)^k D_k delta_l x).
inline LayeredPoly psi(const LayeredPoly& p, unsigned bound, const FieldDescriptor& field) {
  detail::require_single_derivation(field);
  return map_layered_symbols(p, [&](const LayeredSymbol& s) {
    return detail::convolution_image(s, kProlongOfJet, kProlongOfProlong, true, bound, field);
  });
}

/// theta(d_i delta_j x) = delta_j d_i x: jet-over-prolongation to prolongation-over-jet.
inline LayeredPoly theta(const LayeredPoly& p, std::uint64_t characteristic = 0) {
  return map_layered_symbols(p, [&](const LayeredSymbol& s) {
    if (s.outer_kind != LayerKind::Jet || s.inner_kind != LayerKind::Prolong)
      throw Error("theta expects jet-over-prolongation symbols");
    return layered_symbol(s.var, s.inner, s.outer, kProlongOfJet, characteristic);
  });
}

/// "P1J2x": outer kind and order, inner kind and order, variable.
inline std::string layered_symbol_string(const LayeredSymbol& s, const NameTable& names) {
  return layer_letter(s.outer_kind) + std::to_string(s.outer) + layer_letter(s.inner_kind) + std::to_string(s.inner) +
         names.var(s.var);
}

inline std::string layered_poly_string(const LayeredPoly& p, const NameTable& names) {
  return p.to_string([&](const BaseElem& c) { return c.summands(names.params); },
                     [&](const LayeredSymbol& s) { return layered_symbol_string(s, names); });
}

}  // namespace hsjet

#endif  // HSJET_LAYERED_HPP
