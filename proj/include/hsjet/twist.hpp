#ifndef HSJET_TWIST_HPP
#define HSJET_TWIST_HPP

#include <hsjet/base_field.hpp>
#include <hsjet/truncated.hpp>

#include <map>

namespace hsjet {

using BaseSeries = TruncatedElement<BaseElem>;

/// The twisted embedding e(r) = sum_{|alpha|<=m} D_alpha(r) t^alpha.
inline BaseSeries twist_expand(const BaseElem& r, unsigned m, const FieldDescriptor& field) {
  BaseSeries out(field.derivation_count, m);
  for (const auto& [alpha, d] : hasse_table(r, m, field)) out.add_term(alpha, d);
  return out;
}

/// psi(sum c_alpha t^alpha) = sum e(c_alpha) t^alpha: the map from the
/// untwisted truncated ring onto the twisted one.
inline BaseSeries twist_apply(const BaseSeries& c, const FieldDescriptor& field) {
  const unsigned m = c.order_bound();
  BaseSeries out(c.t_count(), m);
  for (const auto& [alpha, coeff] : c.coeffs()) {
    BaseSeries e = twist_expand(coeff, m - alpha.size(), field);
    for (const auto& [beta, d] : e.coeffs()) out.add_term(alpha + beta, d);
  }
  return out;
}

/// The unique c with twist_apply(c) = b.
///
/// Graded elimination: the t^gamma coefficient of twist_apply(c) is
/// c_gamma + sum_{delta < gamma} D_(gamma - delta)(c_delta), so solving in
/// graded order fixes each c_gamma from coefficients already known.
inline BaseSeries twist_inverse(const BaseSeries& b, const FieldDescriptor& field) {
  if (b.t_count() != field.derivation_count) throw Error("t-count does not match derivation count");
  const unsigned m = b.order_bound();
  std::map<MultiIndex, BaseElem> pending;  // contributions of solved coefficients to higher ones
  BaseSeries c(b.t_count(), m);
  for (const MultiIndex& gamma : enumerate_multiindices(b.t_count(), m)) {
    BaseElem cg = b.coeff(gamma);
    if (auto it = pending.find(gamma); it != pending.end()) cg -= it->second;
    if (cg.is_zero()) continue;
    for (const auto& [beta, d] : hasse_table(cg, m - gamma.size(), field))
      if (!beta.is_zero()) pending[gamma + beta] += d;
    c.add_term(gamma, cg);
  }
  return c;
}

inline std::string series_string(const BaseSeries& s, const FieldDescriptor& field) {
  return s.to_string([&](const BaseElem& c) { return c.summands(field.parameter_names); });
}

}  // namespace hsjet

#endif  // HSJET_TWIST_HPP
