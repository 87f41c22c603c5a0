#ifndef HSJET_PRESENTATIONS_HPP
#define HSJET_PRESENTATIONS_HPP

#include <hsjet/diff_poly.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hsjet {

/// Affine variety V(f_1, ..., f_r) in q variables over a parametric field.
struct VarietyPresentation {
  FieldDescriptor field;
  unsigned var_count = 0;
  std::vector<DiffPoly> generators;
  std::vector<std::string> var_names;  // optional; defaults to x1, x2, ...

  NameTable names() const { return NameTable{var_names, field.parameter_names}; }

  void validate() const {
    field.validate();
    if (!var_names.empty() && var_names.size() != var_count) throw Error("variable name count does not match var count");
    for (const DiffPoly& g : generators)
      for (const auto& [mono, c] : g.terms())
        for (const auto& [s, e] : mono.factors()) {
          if (s.var >= var_count) throw Error("generator uses an undeclared variable");
          if (!s.order.is_zero() || s.order.length() != field.derivation_count)
            throw Error("variety generators may only use order-zero symbols");
        }
  }
};

/// The generator d_alpha f_index of a prolongation presentation.
struct LabeledGenerator {
  MultiIndex alpha;
  unsigned index = 0;
  DiffPoly poly;

  friend bool operator==(const LabeledGenerator&, const LabeledGenerator&) = default;
};

/// Presentation of P_m(V) (Prolongation) or J_m(V) (Jet) by symbols and generators.
struct ProlongationPresentation {
  VarietyPresentation base;
  unsigned order = 0;
  DerivationMode mode = DerivationMode::Prolongation;
  std::vector<DiffSymbol> symbols;
  std::vector<LabeledGenerator> generators;
};

/// q * C(n + m, n).
inline std::size_t symbol_count(std::size_t q, std::size_t n, unsigned m) {
  return q * binom_exact(static_cast<unsigned>(n + m), static_cast<unsigned>(n)).get_ui();
}

/// All x_i^(alpha) with i < q and |alpha| <= m, ordered by variable then alpha.
inline std::vector<DiffSymbol> prolongation_symbols(unsigned q, std::size_t n, unsigned m) {
  std::vector<DiffSymbol> out;
  const auto indices = enumerate_multiindices(n, m);
  for (unsigned i = 0; i < q; ++i)
    for (const MultiIndex& a : indices) out.push_back(DiffSymbol{i, a});
  return out;
}

inline ProlongationPresentation prolong_presentation(const VarietyPresentation& v, unsigned m, DerivationMode mode) {
  v.validate();
  ProlongationPresentation p{v, m, mode, prolongation_symbols(v.var_count, v.field.derivation_count, m), {}};
  for (const MultiIndex& a : enumerate_multiindices(v.field.derivation_count, m))
    for (unsigned j = 0; j < v.generators.size(); ++j)
      p.generators.push_back({a, j, apply_d(a, v.generators[j], mode, v.field)});
  return p;
}

/// Restriction of a presentation to orders <= m2.
inline ProlongationPresentation projection_restrict(const ProlongationPresentation& p, unsigned m2) {
  if (m2 > p.order) throw Error("cannot restrict to a larger order");
  ProlongationPresentation r{p.base, m2, p.mode, {}, {}};
  for (const DiffSymbol& s : p.symbols)
    if (s.order.size() <= m2) r.symbols.push_back(s);
  for (const LabeledGenerator& g : p.generators)
    if (g.alpha.size() <= m2) r.generators.push_back(g);
  return r;
}

/// Coordinates a_0, ..., a_{q-1} of a rational point.
using PointAssignment = std::vector<BaseElem>;
/// Values of the symbols x_i^(alpha) at a point of a prolongation.
using JetPoint = std::map<DiffSymbol, BaseElem>;

inline JetPoint order_zero_assignment(const PointAssignment& pt, std::size_t n) {
  JetPoint out;
  for (unsigned i = 0; i < pt.size(); ++i) out.emplace(DiffSymbol{i, MultiIndex::zero(n)}, pt[i]);
  return out;
}

/// Thrown by nabla when the point does not lie on the variety.
class NotOnVariety : public Error {
public:
  NotOnVariety(unsigned index, BaseElem value)
      : Error("point is not on the variety"), index_(index), value_(std::move(value)) {}
  unsigned generator_index() const { return index_; }
  const BaseElem& value() const { return value_; }

private:
  unsigned index_;
  BaseElem value_;
};

/// First generator that does not vanish at the point, with its value.
inline std::optional<std::pair<unsigned, BaseElem>> first_nonvanishing(const VarietyPresentation& v,
                                                                      const PointAssignment& pt) {
  if (pt.size() != v.var_count) throw Error("point does not assign every variable");
  const JetPoint at = order_zero_assignment(pt, v.field.derivation_count);
  for (unsigned j = 0; j < v.generators.size(); ++j) {
    BaseElem val = poly_eval(v.generators[j], at);
    if (!val.is_zero()) return std::make_pair(j, val);
  }
  return std::nullopt;
}

/// nabla_m(a) = (D_alpha a_i) for i < q, |alpha| <= m.
inline JetPoint nabla(const VarietyPresentation& v, unsigned m, const PointAssignment& pt) {
  v.validate();
  if (auto bad = first_nonvanishing(v, pt)) throw NotOnVariety(bad->first, bad->second);
  JetPoint out;
  for (unsigned i = 0; i < v.var_count; ++i)
    for (auto& [a, d] : hasse_table(pt[i], m, v.field)) out.emplace(DiffSymbol{i, a}, std::move(d));
  return out;
}

/// The projection pi_{m, m2} on points.
inline JetPoint restrict_point(const JetPoint& pt, unsigned m2) {
  JetPoint out;
  for (const auto& [s, val] : pt)
    if (s.order.size() <= m2) out.emplace(s, val);
  return out;
}

inline PointAssignment project_point(const JetPoint& pt, unsigned q) {
  PointAssignment out(q);
  std::vector<bool> seen(q, false);
  for (const auto& [s, val] : pt)
    if (s.order.is_zero() && s.var < q) {
      out[s.var] = val;
      seen[s.var] = true;
    }
  for (bool b : seen)
    if (!b) throw Error("jet point misses an order-zero coordinate");
  return out;
}

/// A polynomial map: target variable j is sent to images[j], a polynomial in the source variables.
using Morphism = std::vector<DiffPoly>;

/// Substitute symbols by polynomials.
inline DiffPoly substitute(const DiffPoly& f, const std::map<DiffSymbol, DiffPoly>& images) {
  DiffPoly out;
  for (const auto& [mono, c] : f.terms()) {
    DiffPoly term(c);
    for (const auto& [s, e] : mono.factors()) {
      auto it = images.find(s);
      if (it == images.end()) throw Error("no image for symbol in substitution");
      term = term * it->second.pow(e);
    }
    out += term;
  }
  return out;
}

/// d_alpha y_j -> d_alpha f(y_j) for every target variable and |alpha| <= m.
inline std::map<DiffSymbol, DiffPoly> lift_morphism(const Morphism& f, unsigned m, DerivationMode mode,
                                                    const FieldDescriptor& field) {
  std::map<DiffSymbol, DiffPoly> out;
  for (unsigned j = 0; j < f.size(); ++j)
    for (const MultiIndex& a : enumerate_multiindices(field.derivation_count, m))
      out.emplace(DiffSymbol{j, a}, apply_d(a, f[j], mode, field));
  return out;
}

/// f(a) for a rational point a of the source.
inline PointAssignment apply_morphism(const Morphism& f, const PointAssignment& pt, std::size_t n) {
  const JetPoint at = order_zero_assignment(pt, n);
  PointAssignment out;
  for (const DiffPoly& g : f) out.push_back(poly_eval(g, at));
  return out;
}

/// One summand c * d_gamma f of a membership witness.
struct WitnessTerm {
  DiffPoly cofactor;
  MultiIndex gamma;
};

/// d_alpha(h f) = sum_{beta + gamma = alpha} d_beta h * d_gamma f, listed by gamma.
inline std::vector<WitnessTerm> ideal_membership_witness(const MultiIndex& alpha, const DiffPoly& h, const DiffPoly& /*f*/,
                                                         DerivationMode mode, const FieldDescriptor& field) {
  std::vector<WitnessTerm> out;
  for (const MultiIndex& g : sub_indices(alpha)) {
    DiffPoly c = apply_d(alpha - g, h, mode, field);
    if (!c.is_zero()) out.push_back({std::move(c), g});
  }
  return out;
}

/// Expands the witness and compares with d_alpha(h f).
inline bool witness_holds(const MultiIndex& alpha, const DiffPoly& h, const DiffPoly& f,
                          const std::vector<WitnessTerm>& w, DerivationMode mode, const FieldDescriptor& field) {
  DiffPoly sum;
  for (const WitnessTerm& t : w) sum += t.cofactor * apply_d(t.gamma, f, mode, field);
  return sum == apply_d(alpha, h * f, mode, field);
}

namespace detail {

/// Index of every parameter of `from` inside `to`, checking that derivations agree.
inline std::vector<unsigned> parameter_embedding(const FieldDescriptor& from, const FieldDescriptor& to) {
  if (from.characteristic != to.characteristic) throw Error("base change must keep the characteristic");
  if (from.derivation_count > to.derivation_count) throw Error("base change cannot drop derivations");
  std::vector<unsigned> map;
  for (std::size_t i = 0; i < from.parameter_names.size(); ++i) {
    const auto& names = to.parameter_names;
    auto it = std::find(names.begin(), names.end(), from.parameter_names[i]);
    if (it == names.end()) throw Error("parameter " + from.parameter_names[i] + " missing from the extension");
    auto k = static_cast<std::size_t>(it - names.begin());
    bool differentiated = i < from.derivation_count;
    if (differentiated ? k != i : k < to.derivation_count)
      throw Error("parameter " + from.parameter_names[i] + " changes its derivation in the extension");
    map.push_back(static_cast<unsigned>(k));
  }
  return map;
}

inline ParamPoly rename_params(const ParamPoly& f, const std::vector<unsigned>& map) {
  ParamPoly out;
  for (const auto& [mono, c] : f.terms()) {
    std::vector<ParamMono::Factor> fs;
    for (const auto& [v, e] : mono.factors()) fs.emplace_back(map[v], e);
    out.add_term(ParamMono::from_factors(std::move(fs)), c);
  }
  return out;
}

inline DiffPoly change_coefficients(const DiffPoly& f, const std::vector<unsigned>& map, std::size_t n_new) {
  DiffPoly out;
  for (const auto& [mono, c] : f.terms()) {
    std::vector<DiffMonomial::Factor> fs;
    for (const auto& [s, e] : mono.factors()) {
      if (!s.order.is_zero() && s.order.length() != n_new)
        throw Error("cannot change the derivation count of a differentiated symbol");
      fs.emplace_back(DiffSymbol{s.var, s.order.is_zero() ? MultiIndex::zero(n_new) : s.order}, e);
    }
    out.add_term(DiffMonomial::from_factors(std::move(fs)),
                 BaseElem(rename_params(c.numerator(), map), rename_params(c.denominator(), map)));
  }
  return out;
}

}  // namespace detail

/// Reinterpret V over an extension field.
///
/// Parameters are matched by name. Differentiated parameters keep their
/// position; constants must stay constants. The extension may carry more
/// derivations, which then act trivially on the old field.
inline VarietyPresentation base_change(const VarietyPresentation& v, const FieldDescriptor& to) {
  v.validate();
  to.validate();
  const auto map = detail::parameter_embedding(v.field, to);
  VarietyPresentation out{to, v.var_count, {}, v.var_names};
  for (const DiffPoly& g : v.generators) out.generators.push_back(detail::change_coefficients(g, map, to.derivation_count));
  return out;
}

/// Reinterpret a presentation over an extension with the same derivations.
inline ProlongationPresentation base_change(const ProlongationPresentation& p, const FieldDescriptor& to) {
  if (to.derivation_count != p.base.field.derivation_count)
    throw Error("presentation base change needs the same derivation count");
  const auto map = detail::parameter_embedding(p.base.field, to);
  ProlongationPresentation out{base_change(p.base, to), p.order, p.mode, p.symbols, {}};
  for (const LabeledGenerator& g : p.generators)
    out.generators.push_back({g.alpha, g.index, detail::change_coefficients(g.poly, map, to.derivation_count)});
  return out;
}

inline std::string point_string(const JetPoint& pt, const NameTable& names) {
  std::string s = "{";
  bool first = true;
  for (const auto& [sym, val] : pt) {
    if (!first) s += ", ";
    first = false;
    s += symbol_string(sym, names) + ":" + val.to_string(names.params);
  }
  return s + "}";
}

inline std::string presentation_header(const ProlongationPresentation& p) {
  return std::string("P_m mode=") + mode_name(p.mode) + " vars=" + std::to_string(p.base.var_count) +
         " derivations=" + std::to_string(p.base.field.derivation_count) + " order=" + std::to_string(p.order);
}

/// Header line, one line per symbol, one line per generator.
inline std::string presentation_text(const ProlongationPresentation& p) {
  const NameTable names = p.base.names();
  std::string out = presentation_header(p) + "\n";
  for (const DiffSymbol& s : p.symbols) out += symbol_string(s, names) + "\n";
  for (const LabeledGenerator& g : p.generators) out += diff_poly_string(g.poly, names) + "\n";
  return out;
}

}  // namespace hsjet

#endif  // HSJET_PRESENTATIONS_HPP
