#ifndef HSJET_VERIFY_HPP
#define HSJET_VERIFY_HPP

#include <hsjet/iso_theorems.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hsjet {

/// Knobs of the randomized check suites. Unset bounds fall back to per-suite defaults.
struct SuiteOptions {
  std::uint64_t seed = 1;
  unsigned trials = 100;
  std::optional<unsigned> order;  // |alpha| for oracle/iterative/leibniz, m for twist/tensor
  std::optional<unsigned> outer;  // theta outer order
  std::optional<unsigned> inner;  // theta inner order
  std::optional<unsigned> max;    // phi-psi truncation N, multinomial k
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"oracle", "twist",  "iterative", "leibniz",
                                              "theta",  "phi-psi", "tensor",   "multinomial"};
  return names;
}

namespace detail {

inline std::vector<FieldDescriptor> oracle_fields() {
  return {FieldDescriptor(0, {"s"}, 1), FieldDescriptor(0, {"s1", "s2"}, 2), FieldDescriptor(5, {"s"}, 1),
          FieldDescriptor(5, {"s1", "s2"}, 2)};
}

inline std::vector<FieldDescriptor> small_fields() {
  return {FieldDescriptor(0, {"s"}, 1), FieldDescriptor(0, {"s1", "s2"}, 2), FieldDescriptor(5, {"s"}, 1)};
}

/// Derive a per-check seed so suites run alone or inside `all` give the same report.
inline std::uint64_t sub_seed(std::uint64_t seed, const std::string& tag) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : tag) h = (h ^ c) * 1099511628211ULL;
  return seed ^ h;
}

/// Runs body, turning a thrown error into a failure of the report.
inline CheckReport guarded(CheckReport r, const std::function<void(CheckReport&)>& body) {
  try {
    body(r);
  } catch (const Error& e) {
    r.error("exception", e.what());
  }
  return r;
}

inline std::string diff_str(const DiffPoly& f, const FieldDescriptor& field) {
  return diff_poly_string(f, NameTable{{}, field.parameter_names});
}

inline std::string series_str(const BaseSeries& s, const FieldDescriptor& f) { return series_string(s, f); }

}  // namespace detail

/// apply_d against the Taylor-substitution oracle, both modes.
inline std::vector<CheckReport> run_oracle_suite(const SuiteOptions& o) {
  const unsigned max_alpha = o.order.value_or(4);
  std::vector<CheckReport> out;
  for (const FieldDescriptor& f : detail::oracle_fields()) {
    const std::string params = "order<=" + std::to_string(max_alpha) + "," + field_params(f);
    out.push_back(detail::guarded(CheckReport("oracle", params), [&](CheckReport& r) {
      Rng rng(detail::sub_seed(o.seed, "oracle" + params));
      for (unsigned t = 0; t < o.trials && r.ok; ++t) {
        DiffPoly g = rng.diff_poly(f, 3, 3, 3, 1);
        MultiIndex a = rng.multi_index(f.derivation_count, max_alpha);
        for (auto mode : {DerivationMode::Prolongation, DerivationMode::Jet}) {
          DiffPoly lhs = apply_d(a, g, mode, f), rhs = taylor_oracle(a, g, mode, f);
          r.expect(lhs == rhs,
                   std::string(mode_name(mode)) + ",alpha=" + a.to_string() + ",f=" + detail::diff_str(g, f),
                   [&] { return detail::diff_str(lhs, f); }, [&] { return detail::diff_str(rhs, f); });
        }
      }
    }));
  }
  return out;
}

/// psi round trips and the twisted scalar action.
inline std::vector<CheckReport> run_twist_suite(const SuiteOptions& o) {
  const unsigned max_m = o.order.value_or(3);
  std::vector<CheckReport> out;
  for (const FieldDescriptor& f : {FieldDescriptor(0, {"s1", "s2"}, 2), FieldDescriptor(5, {"s"}, 1)}) {
    const std::string params = "m<=" + std::to_string(max_m) + "," + field_params(f);
    out.push_back(detail::guarded(CheckReport("twist", params), [&](CheckReport& r) {
      Rng rng(detail::sub_seed(o.seed, "twist" + params));
      const std::size_t n = f.derivation_count;
      for (unsigned t = 0; t < o.trials && r.ok; ++t) {
        unsigned m = static_cast<unsigned>(rng.uniform(0, max_m));
        BaseSeries c(n, m);
        for (const auto& a : enumerate_multiindices(n, m))
          if (rng.chance(1, 2)) c.add_term(a, rng.base_elem(f));
        BaseElem x = rng.base_elem(f);
        const std::string at = "m=" + std::to_string(m) + ",c=" + detail::series_str(c, f);
        BaseSeries back = twist_inverse(twist_apply(c, f), f);
        r.expect(back == c, at + ",inverse(psi(c))", [&] { return detail::series_str(back, f); },
                 [&] { return detail::series_str(c, f); });
        BaseSeries fwd = twist_apply(twist_inverse(c, f), f);
        r.expect(fwd == c, at + ",psi(inverse(c))", [&] { return detail::series_str(fwd, f); },
                 [&] { return detail::series_str(c, f); });
        BaseSeries lhs = twist_apply(c.scaled(x), f), rhs = trunc_mul(twist_expand(x, m, f), twist_apply(c, f));
        r.expect(lhs == rhs, at + ",r=" + x.to_string(f.parameter_names), [&] { return detail::series_str(lhs, f); },
                 [&] { return detail::series_str(rhs, f); });
      }
    }));
  }
  return out;
}

/// D_a D_b = comp_coeff(a, b) D_(a+b) on the field and on differential polynomials; unit derivations commute.
inline std::vector<CheckReport> run_iterative_suite(const SuiteOptions& o) {
  const unsigned max_alpha = o.order.value_or(2);
  std::vector<CheckReport> out;
  for (const FieldDescriptor& f : detail::small_fields()) {
    const std::string params = "order<=" + std::to_string(max_alpha) + "," + field_params(f);
    out.push_back(detail::guarded(CheckReport("iterative", params), [&](CheckReport& r) {
      Rng rng(detail::sub_seed(o.seed, "iterative" + params));
      const std::size_t n = f.derivation_count;
      for (unsigned t = 0; t < o.trials && r.ok; ++t) {
        BaseElem x = rng.base_elem(f);
        MultiIndex a = rng.multi_index(n, max_alpha), b = rng.multi_index(n, max_alpha);
        const std::string at = "a=" + a.to_string() + ",b=" + b.to_string();
        BaseElem lhs = hasse_derive(a, hasse_derive(b, x, f), f);
        BaseElem rhs = BaseElem(comp_coeff(a, b, f)) * hasse_derive(a + b, x, f);
        r.expect(lhs == rhs, at + ",x=" + x.to_string(f.parameter_names),
                 [&] { return lhs.to_string(f.parameter_names); }, [&] { return rhs.to_string(f.parameter_names); });
        std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
        std::size_t j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
        MultiIndex ei = MultiIndex::unit(n, i), ej = MultiIndex::unit(n, j);
        BaseElem cij = hasse_derive(ei, hasse_derive(ej, x, f), f), cji = hasse_derive(ej, hasse_derive(ei, x, f), f);
        r.expect(cij == cji, "commute,i=" + std::to_string(i) + ",j=" + std::to_string(j),
                 [&] { return cij.to_string(f.parameter_names); }, [&] { return cji.to_string(f.parameter_names); });
        DiffPoly g = rng.diff_poly(f, 2, 3, 2, 1);
        for (auto mode : {DerivationMode::Prolongation, DerivationMode::Jet}) {
          DiffPoly pl = apply_d(a, apply_d(b, g, mode, f), mode, f);
          DiffPoly pr = apply_d(a + b, g, mode, f).scaled(BaseElem(comp_coeff(a, b, f)));
          r.expect(pl == pr, at + "," + mode_name(mode) + ",f=" + detail::diff_str(g, f),
                   [&] { return detail::diff_str(pl, f); }, [&] { return detail::diff_str(pr, f); });
          DiffPoly ql = apply_d(ei, apply_d(ej, g, mode, f), mode, f), qr = apply_d(ej, apply_d(ei, g, mode, f), mode, f);
          r.expect(ql == qr, "commute," + std::string(mode_name(mode)) + ",f=" + detail::diff_str(g, f),
                   [&] { return detail::diff_str(ql, f); }, [&] { return detail::diff_str(qr, f); });
        }
      }
    }));
  }
  return out;
}

/// Generalized Leibniz rule on the field and on polynomials, and the membership witness identity.
inline std::vector<CheckReport> run_leibniz_suite(const SuiteOptions& o) {
  const unsigned max_alpha = o.order.value_or(3);
  std::vector<CheckReport> out;
  for (const FieldDescriptor& f : detail::small_fields()) {
    const std::string params = "order<=" + std::to_string(max_alpha) + "," + field_params(f);
    out.push_back(detail::guarded(CheckReport("leibniz", params), [&](CheckReport& r) {
      Rng rng(detail::sub_seed(o.seed, "leibniz" + params));
      for (unsigned t = 0; t < o.trials && r.ok; ++t) {
        MultiIndex a = rng.multi_index(f.derivation_count, max_alpha);
        BaseElem x = rng.base_elem(f), y = rng.base_elem(f);
        BaseElem sum;
        for (const auto& b : sub_indices(a)) sum += hasse_derive(b, x, f) * hasse_derive(a - b, y, f);
        BaseElem prod = hasse_derive(a, x * y, f);
        r.expect(prod == sum, "field,alpha=" + a.to_string(), [&] { return prod.to_string(f.parameter_names); },
                 [&] { return sum.to_string(f.parameter_names); });
        DiffPoly h = rng.diff_poly(f, 2, 3, 2, 0), g = rng.diff_poly(f, 2, 3, 2, 0);
        for (auto mode : {DerivationMode::Prolongation, DerivationMode::Jet}) {
          DiffPoly psum;
          for (const auto& b : sub_indices(a)) psum += apply_d(b, h, mode, f) * apply_d(a - b, g, mode, f);
          DiffPoly pprod = apply_d(a, h * g, mode, f);
          r.expect(pprod == psum, std::string(mode_name(mode)) + ",alpha=" + a.to_string(),
                   [&] { return detail::diff_str(pprod, f); }, [&] { return detail::diff_str(psum, f); });
          r.expect(witness_holds(a, h, g, ideal_membership_witness(a, h, g, mode, f), mode, f),
                   std::string("witness,") + mode_name(mode) + ",alpha=" + a.to_string() + ",h=" +
                       detail::diff_str(h, f) + ",f=" + detail::diff_str(g, f),
                   [] { return std::string("witness sum"); }, [] { return std::string("d_alpha(h*f)"); });
        }
      }
    }));
  }
  return out;
}

inline std::vector<CheckReport> run_theta_suite(const SuiteOptions& o) {
  const unsigned outer = o.outer.value_or(3), inner = o.inner.value_or(3);
  const unsigned varieties = std::max(1U, o.trials / 5);
  std::vector<CheckReport> out;
  for (const FieldDescriptor& f : {FieldDescriptor(0, {"s"}, 1), FieldDescriptor(5, {"s"}, 1)})
    out.push_back(check_theta_random(outer, inner, varieties, detail::sub_seed(o.seed, "theta" + field_params(f)), f));
  return out;
}

namespace detail {

/// Folds several reports into one line, keeping the first failure.
inline CheckReport merge_reports(const std::string& name, const std::string& params,
                                 const std::vector<CheckReport>& parts) {
  CheckReport r(name, params);
  for (const auto& p : parts) {
    r.trials += p.trials;
    if (!p.ok && r.ok) {
      r.ok = false;
      r.at = p.params + "," + p.at;
      r.lhs = p.lhs;
      r.rhs = p.rhs;
    }
  }
  return r;
}

}  // namespace detail

inline std::vector<CheckReport> run_phi_psi_suite(const SuiteOptions& o) {
  const unsigned max_n = o.max.value_or(6);
  const unsigned m_cap = 3;
  std::vector<CheckReport> out;
  for (const FieldDescriptor& f : {FieldDescriptor(0, {"s"}, 1), FieldDescriptor(5, {"s"}, 1)}) {
    std::vector<CheckReport> sweeps;
    for (unsigned N = 0; N <= max_n; ++N)
      for (unsigned m = 0; m <= std::min(N, m_cap); ++m) sweeps.push_back(check_phi_psi_sweep(N, m, f));
    out.push_back(detail::merge_reports("phi-psi-sweep", "N<=" + std::to_string(max_n) + ",m<=3," + field_params(f), sweeps));
    const unsigned m = std::min(max_n, m_cap);
    out.push_back(check_phi_psi_random(max_n, m, o.trials, detail::sub_seed(o.seed, "phi-psi-random" + field_params(f)), f));
    out.push_back(check_derivative_expansions(max_n, m, o.trials, detail::sub_seed(o.seed, "phi-psi-expansion" + field_params(f)), f));
  }
  return out;
}

inline std::vector<CheckReport> run_tensor_suite(const SuiteOptions& o) {
  const unsigned m = o.order.value_or(2);
  std::vector<CheckReport> out;
  for (const FieldDescriptor& f : {FieldDescriptor(0, {"s"}, 1), FieldDescriptor(5, {"s"}, 1)})
    out.push_back(twisted_tensor_check(m, m, o.trials, detail::sub_seed(o.seed, "tensor" + field_params(f)), f));
  return out;
}

inline std::vector<CheckReport> run_multinomial_suite(const SuiteOptions& o) {
  const unsigned k = o.max.value_or(12);
  std::vector<CheckReport> out{multinomial_identity_check(k)};
  for (const FieldDescriptor& f : {FieldDescriptor(0, {"s"}, 1), FieldDescriptor(5, {"s"}, 1)})
    out.push_back(partition_derivative_check(std::min(k, 6U), o.trials,
                                             detail::sub_seed(o.seed, "partition" + field_params(f)), f));
  return out;
}

/// Runs one named suite, or every suite for "all".
inline std::vector<CheckReport> run_suite(const std::string& name, const SuiteOptions& o) {
  if (name == "all") {
    std::vector<CheckReport> out;
    for (const auto& s : suite_names()) {
      auto part = run_suite(s, o);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  if (name == "oracle") return run_oracle_suite(o);
  if (name == "twist") return run_twist_suite(o);
  if (name == "iterative") return run_iterative_suite(o);
  if (name == "leibniz") return run_leibniz_suite(o);
  if (name == "theta") return run_theta_suite(o);
  if (name == "phi-psi") return run_phi_psi_suite(o);
  if (name == "tensor") return run_tensor_suite(o);
  if (name == "multinomial") return run_multinomial_suite(o);
  throw Error("unknown check suite: " + name);
}

}  // namespace hsjet

#endif  // HSJET_VERIFY_HPP
