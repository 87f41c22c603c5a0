#ifndef HSJET_ISO_THEOREMS_HPP
#define HSJET_ISO_THEOREMS_HPP

#include <hsjet/layered.hpp>
#include <hsjet/presentations.hpp>
#include <hsjet/random.hpp>
#include <hsjet/report.hpp>
#include <hsjet/twist.hpp>

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hsjet {

// ---------------------------------------------------------------- phi / psi

namespace detail {

inline std::string layered_label(unsigned i, unsigned j, Layering l) {
  return layered_symbol_string(LayeredSymbol{0, l.outer, i, l.inner, j}, NameTable{{"x"}, {}});
}

/// Random polynomial in symbols of the given layering with outer <= max_outer, inner <= max_inner.
inline LayeredPoly random_layered(Rng& rng, const FieldDescriptor& f, Layering l, unsigned vars, unsigned max_outer,
                                  unsigned max_inner) {
  LayeredPoly out;
  unsigned terms = static_cast<unsigned>(rng.uniform(1, 3));
  for (unsigned t = 0; t < terms; ++t) {
    std::vector<LayeredMonomial::Factor> fs;
    unsigned deg = static_cast<unsigned>(rng.uniform(0, 2));
    for (unsigned d = 0; d < deg; ++d)
      fs.emplace_back(LayeredSymbol{static_cast<unsigned>(rng.uniform(0, vars - 1)), l.outer,
                                    static_cast<unsigned>(rng.uniform(0, max_outer)), l.inner,
                                    static_cast<unsigned>(rng.uniform(0, max_inner))},
                      1);
    out.add_term(LayeredMonomial::from_factors(std::move(fs)), rng.nonzero_base_elem(f));
  }
  return out;
}

/// a * y_1 ... y_r with a random coefficient a and r <= 3.
inline DiffPoly random_monomial(Rng& rng, const FieldDescriptor& f, unsigned vars) {
  std::vector<DiffMonomial::Factor> fs;
  unsigned r = static_cast<unsigned>(rng.uniform(0, 3));
  for (unsigned k = 0; k < r; ++k)
    fs.emplace_back(DiffSymbol{static_cast<unsigned>(rng.uniform(0, vars - 1)), MultiIndex::zero(f.derivation_count)}, 1);
  return DiffPoly(DiffMonomial::from_factors(std::move(fs)), rng.nonzero_base_elem(f, 1, 2));
}

inline std::string grid_params(unsigned N, unsigned m, const FieldDescriptor& f) {
  return "N=" + std::to_string(N) + ",m=" + std::to_string(m) + "," + field_params(f);
}

}  // namespace detail

/// psi(phi(g)) = g and phi(psi(g)) = g on every generator with outer <= N - m, inner <= m.
inline CheckReport check_phi_psi_sweep(unsigned N, unsigned m, const FieldDescriptor& field) {
  CheckReport r("phi-psi-sweep", detail::grid_params(N, m, field));
  const NameTable names{{"x"}, field.parameter_names};
  if (m > N) {
    r.error("N<m", "inner bound exceeds the truncation bound");
    return r;
  }
  const std::uint64_t p = field.characteristic;
  try {
    for (unsigned i = 0; i + m <= N; ++i)
      for (unsigned j = 0; j <= m; ++j) {
        LayeredPoly g = layered_symbol(0, i, j, kProlongOfProlong, p);
        LayeredPoly back = psi(phi(g, N, field), N, field);
        r.expect(back == g, "psi(phi(" + detail::layered_label(i, j, kProlongOfProlong) + "))",
                 [&] { return layered_poly_string(back, names); }, [&] { return layered_poly_string(g, names); });
        LayeredPoly h = layered_symbol(0, i, j, kProlongOfJet, p);
        LayeredPoly fwd = phi(psi(h, N, field), N, field);
        r.expect(fwd == h, "phi(psi(" + detail::layered_label(i, j, kProlongOfJet) + "))",
                 [&] { return layered_poly_string(fwd, names); }, [&] { return layered_poly_string(h, names); });
      }
  } catch (const Error& e) {
    r.error("sweep", e.what());
  }
  return r;
}

/// Inverse and ring-map identities on random layered polynomials.
inline CheckReport check_phi_psi_random(unsigned N, unsigned m, unsigned trials, std::uint64_t seed,
                                        const FieldDescriptor& field) {
  CheckReport r("phi-psi-random", detail::grid_params(N, m, field));
  if (m > N) {
    r.error("N<m", "inner bound exceeds the truncation bound");
    return r;
  }
  const NameTable names{{}, field.parameter_names};
  auto str = [&](const LayeredPoly& x) { return layered_poly_string(x, names); };
  Rng rng(seed);
  try {
    for (unsigned t = 0; t < trials && r.ok; ++t) {
      const std::string at = "trial=" + std::to_string(t);
      LayeredPoly a = detail::random_layered(rng, field, kProlongOfProlong, 2, N - m, m);
      LayeredPoly b = detail::random_layered(rng, field, kProlongOfProlong, 2, N - m, m);
      LayeredPoly pa = phi(a, N, field), pb = phi(b, N, field), pab = phi(a * b, N, field);
      r.expect(psi(pa, N, field) == a, at + ",psi(phi(p))", [&] { return str(psi(pa, N, field)); }, [&] { return str(a); });
      r.expect(pab == pa * pb, at + ",phi(pq)", [&] { return str(pab); }, [&] { return str(pa * pb); });
      LayeredPoly c = detail::random_layered(rng, field, kProlongOfJet, 2, N - m, m);
      LayeredPoly sc = psi(c, N, field);
      r.expect(phi(sc, N, field) == c, at + ",phi(psi(p))", [&] { return str(phi(sc, N, field)); }, [&] { return str(c); });
      r.expect(psi(c * c, N, field) == sc * sc, at + ",psi(pp)", [&] { return str(psi(c * c, N, field)); },
               [&] { return str(sc * sc); });
    }
  } catch (const Error& e) {
    r.error("random", e.what());
  }
  return r;
}

/// phi(d_i delta_j h) = D_i(sum_{k+l=j} d_k partial_l h).
inline LayeredPoly phi_on_derivative(unsigned i, unsigned j, const DiffPoly& h, unsigned N, const FieldDescriptor& f) {
  return phi(two_layer_derive(i, j, h, kProlongOfProlong, N, f), N, f);
}
inline LayeredPoly phi_derivative_expansion(unsigned i, unsigned j, const DiffPoly& h, unsigned N, const FieldDescriptor& f) {
  LayeredPoly sum;
  for (unsigned k = 0; k <= j; ++k) sum += two_layer_derive(k, j - k, h, kProlongOfJet, N, f);
  return outer_derive(i, sum, LayerKind::Prolong, N, f);
}
/// psi(d_i partial_j h) = D_i(sum_{k+l=j} (-1)^k D_k delta_l h).
inline LayeredPoly psi_on_derivative(unsigned i, unsigned j, const DiffPoly& h, unsigned N, const FieldDescriptor& f) {
  return psi(two_layer_derive(i, j, h, kProlongOfJet, N, f), N, f);
}
inline LayeredPoly psi_derivative_expansion(unsigned i, unsigned j, const DiffPoly& h, unsigned N, const FieldDescriptor& f) {
  LayeredPoly sum;
  for (unsigned k = 0; k <= j; ++k) {
    LayeredPoly term = two_layer_derive(k, j - k, h, kProlongOfProlong, N, f);
    sum += k % 2 ? -term : term;
  }
  return outer_derive(i, sum, LayerKind::Prolong, N, f);
}

/// Both expansions for random monomials h and every i <= N - m, j <= m.
inline CheckReport check_derivative_expansions(unsigned N, unsigned m, unsigned trials, std::uint64_t seed,
                                const FieldDescriptor& field) {
  CheckReport r("phi-psi-expansion", detail::grid_params(N, m, field));
  if (m > N) {
    r.error("N<m", "inner bound exceeds the truncation bound");
    return r;
  }
  const NameTable names{{}, field.parameter_names};
  auto str = [&](const LayeredPoly& x) { return layered_poly_string(x, names); };
  Rng rng(seed);
  try {
    for (unsigned t = 0; t < trials && r.ok; ++t) {
      DiffPoly h = detail::random_monomial(rng, field, 3);
      const std::string hs = diff_poly_string(h, names);
      unsigned i = static_cast<unsigned>(rng.uniform(0, N - m)), j = static_cast<unsigned>(rng.uniform(0, m));
      const std::string where = "i=" + std::to_string(i) + ",j=" + std::to_string(j) + ",h=" + hs;
      LayeredPoly l1 = phi_on_derivative(i, j, h, N, field), r1 = phi_derivative_expansion(i, j, h, N, field);
      r.expect(l1 == r1, "phi," + where, [&] { return str(l1); }, [&] { return str(r1); });
      LayeredPoly l2 = psi_on_derivative(i, j, h, N, field), r2 = psi_derivative_expansion(i, j, h, N, field);
      r.expect(l2 == r2, "psi," + where, [&] { return str(l2); }, [&] { return str(r2); });
    }
  } catch (const Error& e) {
    r.error("expansion", e.what());
  }
  return r;
}

/// Generator sweep, random identities and the derivative expansions.
inline std::vector<CheckReport> check_phi_psi_inverse(unsigned N, unsigned m, unsigned trials, std::uint64_t seed,
                                                      const FieldDescriptor& field) {
  return {check_phi_psi_sweep(N, m, field), check_phi_psi_random(N, m, trials, seed, field),
          check_derivative_expansions(N, m, trials, seed + 1, field)};
}

// ---------------------------------------------------------------- theta

/// theta(d_i delta_j f) = delta_j d_i f for every generator f, i <= outer, j <= inner.
inline CheckReport check_theta_relations(unsigned outer, unsigned inner, const VarietyPresentation& v) {
  const FieldDescriptor& f = v.field;
  CheckReport r("theta", "outer=" + std::to_string(outer) + ",inner=" + std::to_string(inner) + "," + field_params(f));
  const NameTable names = v.names();
  const unsigned bound = std::max(outer, inner);
  try {
    for (unsigned g = 0; g < v.generators.size(); ++g)
      for (unsigned i = 0; i <= outer; ++i)
        for (unsigned j = 0; j <= inner; ++j) {
          LayeredPoly lhs = theta(two_layer_derive(i, j, v.generators[g], kJetOfProlong, bound, f), f.characteristic);
          LayeredPoly rhs = two_layer_derive(j, i, v.generators[g], kProlongOfJet, bound, f);
          r.expect(lhs == rhs,
                   "i=" + std::to_string(i) + ",j=" + std::to_string(j) + ",f=" + diff_poly_string(v.generators[g], names),
                   [&] { return layered_poly_string(lhs, names); }, [&] { return layered_poly_string(rhs, names); });
          if (!r.ok) return r;
        }
  } catch (const Error& e) {
    r.error("theta", e.what());
  }
  return r;
}

/// check_theta_relations on `varieties` random varieties in up to two variables.
inline CheckReport check_theta_random(unsigned outer, unsigned inner, unsigned varieties, std::uint64_t seed,
                                      const FieldDescriptor& field) {
  CheckReport total("theta-random", "outer=" + std::to_string(outer) + ",inner=" + std::to_string(inner) + "," +
                                        field_params(field));
  Rng rng(seed);
  for (unsigned t = 0; t < varieties; ++t) {
    unsigned q = static_cast<unsigned>(rng.uniform(1, 2));
    VarietyPresentation v{field, q, {rng.diff_poly(field, q, 3, 2, 0)}, {}};
    CheckReport one = check_theta_relations(outer, inner, v);
    total.trials += one.trials;
    if (!one.ok && total.ok) {
      total.ok = false;
      total.at = "variety=" + std::to_string(t) + "," + one.at;
      total.lhs = one.lhs;
      total.rhs = one.rhs;
    }
  }
  return total;
}

// ---------------------------------------------------------------- twisted tensor

/// Normal form sum b_{kl} (x) w^k (x) z^l of B (x) K_a (x) K_b, with B the order-zero
/// polynomial ring. `twisted` names the slot (0 or 1) on which K acts through e.
struct TensorElem {
  std::size_t n = 0;
  unsigned bound0 = 0, bound1 = 0;
  unsigned twisted = 0;
  std::map<std::pair<MultiIndex, MultiIndex>, DiffPoly> c;

  void add(const MultiIndex& a, const MultiIndex& b, const DiffPoly& v) {
    if (a.size() > bound0 || b.size() > bound1 || v.is_zero()) return;
    auto key = std::make_pair(a, b);
    auto it = c.find(key);
    if (it == c.end()) {
      c.emplace(key, v);
      return;
    }
    it->second += v;
    if (it->second.is_zero()) c.erase(it);
  }

  friend bool operator==(const TensorElem& x, const TensorElem& y) {
    return x.n == y.n && x.bound0 == y.bound0 && x.bound1 == y.bound1 && x.twisted == y.twisted && x.c == y.c;
  }
  friend TensorElem operator+(TensorElem x, const TensorElem& y) {
    for (const auto& [k, v] : y.c) x.add(k.first, k.second, v);
    return x;
  }
};

/// theta(b (x) u^beta (x) t^alpha) = b (x) t^alpha (x) u^beta.
inline TensorElem tensor_swap(const TensorElem& v) {
  TensorElem out{v.n, v.bound1, v.bound0, 1 - v.twisted, {}};
  for (const auto& [k, b] : v.c) out.add(k.second, k.first, b);
  return out;
}

/// c.(b (x) u^beta (x) t^alpha) = sum_gamma D_gamma(c) b (x) u^(beta+gamma) (x) t^alpha, summed term by term.
inline TensorElem scalar_action(const BaseElem& c, const TensorElem& v, const FieldDescriptor& field) {
  TensorElem out{v.n, v.bound0, v.bound1, v.twisted, {}};
  const unsigned bound = v.twisted == 0 ? v.bound0 : v.bound1;
  const auto table = hasse_table(c, bound, field);
  for (const auto& [k, b] : v.c)
    for (const auto& [g, dc] : table) {
      if (dc.is_zero()) continue;
      DiffPoly nb = b.scaled(dc);
      if (v.twisted == 0) out.add(k.first + g, k.second, nb);
      else out.add(k.first, k.second + g, nb);
    }
  return out;
}

/// The same action, computed by multiplying each twisted-slot series by e(c) in the truncated ring.
inline TensorElem scalar_action_by_series(const BaseElem& c, const TensorElem& v, const FieldDescriptor& field) {
  using Series = TruncatedElement<DiffPoly>;
  const unsigned bound = v.twisted == 0 ? v.bound0 : v.bound1;
  const Series ec = twist_expand(c, bound, field).map_coeffs([](const BaseElem& b) { return diff_const(b); });
  std::map<MultiIndex, Series> slices;  // keyed by the untwisted index
  for (const auto& [k, b] : v.c) {
    const MultiIndex& plain = v.twisted == 0 ? k.second : k.first;
    const MultiIndex& tw = v.twisted == 0 ? k.first : k.second;
    auto it = slices.try_emplace(plain, Series(v.n, bound)).first;
    it->second.add_term(tw, b);
  }
  TensorElem out{v.n, v.bound0, v.bound1, v.twisted, {}};
  for (const auto& [plain, s] : slices) {
    const Series prod = trunc_mul(ec, s);
    for (const auto& [tw, b] : prod.coeffs()) {
      if (v.twisted == 0) out.add(tw, plain, b);
      else out.add(plain, tw, b);
    }
  }
  return out;
}

inline std::string tensor_string(const TensorElem& v, const NameTable& names) {
  std::vector<TermText> parts;
  for (const auto& [k, b] : v.c) {
    std::string s = "(" + diff_poly_string(b, names) + ")";
    s += "*u" + k.first.to_string() + "*t" + k.second.to_string();
    parts.push_back({false, s});
  }
  return join_terms(parts);
}

namespace detail {

inline TensorElem random_tensor(Rng& rng, const FieldDescriptor& f, unsigned m, unsigned q) {
  TensorElem v{f.derivation_count, q, m, 0, {}};
  unsigned terms = static_cast<unsigned>(rng.uniform(1, 3));
  for (unsigned t = 0; t < terms; ++t)
    v.add(rng.multi_index(f.derivation_count, q), rng.multi_index(f.derivation_count, m), rng.diff_poly(f, 2, 2, 2, 0));
  return v;
}

}  // namespace detail

/// K-linearity of theta, associativity of the action, and the surjectivity witness.
inline CheckReport twisted_tensor_check(unsigned m, unsigned q, unsigned samples, std::uint64_t seed,
                                        const FieldDescriptor& field) {
  CheckReport r("tensor", "m=" + std::to_string(m) + ",q=" + std::to_string(q) + "," + field_params(field));
  const NameTable names{{}, field.parameter_names};
  auto str = [&](const TensorElem& x) { return tensor_string(x, names); };
  const std::size_t n = field.derivation_count;
  const std::uint64_t p = field.characteristic;
  Rng rng(seed);
  try {
    for (unsigned t = 0; t < samples && r.ok; ++t) {
      const std::string at = "sample=" + std::to_string(t);
      BaseElem c = rng.base_elem(field), c2 = rng.base_elem(field);
      TensorElem v = detail::random_tensor(rng, field, m, q), w = detail::random_tensor(rng, field, m, q);

      TensorElem lhs = tensor_swap(scalar_action(c, v, field));
      TensorElem rhs = scalar_action_by_series(c, tensor_swap(v), field);
      r.expect(lhs == rhs, at + ",linear", [&] { return str(lhs); }, [&] { return str(rhs); });

      TensorElem sum_l = tensor_swap(scalar_action(c, v, field) + scalar_action(c2, w, field));
      TensorElem sum_r = scalar_action_by_series(c, tensor_swap(v), field) + scalar_action_by_series(c2, tensor_swap(w), field);
      r.expect(sum_l == sum_r, at + ",additive", [&] { return str(sum_l); }, [&] { return str(sum_r); });

      TensorElem a1 = scalar_action(c * c2, v, field), a2 = scalar_action(c, scalar_action(c2, v, field), field);
      r.expect(a1 == a2, at + ",associative", [&] { return str(a1); }, [&] { return str(a2); });

      // c (x) 1 (x) 1 in the target is theta of sum_gamma c_gamma . (1 (x) u^gamma (x) 1)
      BaseSeries cs = twist_inverse(BaseSeries::constant(n, q, c), field);
      TensorElem pre{n, q, m, 0, {}};
      for (const auto& [g, cg] : cs.coeffs()) {
        TensorElem unit{n, q, m, 0, {}};
        unit.add(g, MultiIndex::zero(n), diff_const(BaseElem(Scalar::one(p))));
        pre = pre + scalar_action(cg, unit, field);
      }
      TensorElem image = tensor_swap(pre), want{n, m, q, 1, {}};
      want.add(MultiIndex::zero(n), MultiIndex::zero(n), diff_const(c));
      r.expect(image == want, at + ",surjective,c=" + c.to_string(field.parameter_names), [&] { return str(image); },
               [&] { return str(want); });
    }
  } catch (const Error& e) {
    r.error("tensor", e.what());
  }
  return r;
}

// ---------------------------------------------------------------- ordered partitions

using OrderedPartition = std::vector<unsigned>;

/// All compositions of k, ordered by length, then lexicographically.
inline std::vector<OrderedPartition> ordered_partitions(unsigned k) {
  if (k == 0) throw Error("ordered partitions need k >= 1");
  if (k > 30) throw Error("ordered partitions limited to k <= 30");
  std::vector<OrderedPartition> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (k - 1)); ++mask) {
    OrderedPartition part;
    unsigned run = 1;
    for (unsigned i = 0; i + 1 < k; ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        part.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    part.push_back(run);
    out.push_back(std::move(part));
  }
  std::sort(out.begin(), out.end(), [](const OrderedPartition& a, const OrderedPartition& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

/// sum over P[k] of (-1)^|pi| mu(pi).
inline mpz_class signed_multinomial_sum(unsigned k) {
  mpz_class sum = 0;
  for (const auto& pi : ordered_partitions(k)) {
    mpz_class mu = multinomial(pi);
    if (pi.size() % 2) sum -= mu;
    else sum += mu;
  }
  return sum;
}

inline std::string partition_string(const OrderedPartition& pi) {
  std::string s = "(";
  for (std::size_t i = 0; i < pi.size(); ++i) s += (i ? "," : "") + std::to_string(pi[i]);
  return s + ")";
}

/// The lemma for 1 <= k <= max_k, with |P[k]| = 2^(k-1).
inline CheckReport multinomial_identity_check(unsigned max_k) {
  CheckReport r("multinomial", "k=1.." + std::to_string(max_k));
  for (unsigned k = 1; k <= max_k; ++k) {
    const std::string at = "k=" + std::to_string(k);
    mpz_class count = ordered_partitions(k).size();
    mpz_class want_count = mpz_class(1) << (k - 1);
    r.expect(count == want_count, at + ",count", [&] { return count.get_str(); }, [&] { return want_count.get_str(); });
    mpz_class sum = signed_multinomial_sum(k), want = k % 2 ? -1 : 1;
    r.expect(sum == want, at + ",sum", [&] { return sum.get_str(); }, [&] { return want.get_str(); });
  }
  return r;
}

/// D_pi = mu(pi) D_k on random elements, for every pi in P[k], k <= max_k.
inline CheckReport partition_derivative_check(unsigned max_k, unsigned trials, std::uint64_t seed,
                                              const FieldDescriptor& field) {
  CheckReport r("partition-derivative", "k=1.." + std::to_string(max_k) + "," + field_params(field));
  detail::require_single_derivation(field);
  Rng rng(seed);
  for (unsigned t = 0; t < trials && r.ok; ++t) {
    BaseElem a = rng.base_elem(field);
    unsigned k = static_cast<unsigned>(rng.uniform(1, max_k));
    BaseElem dk = detail::base_derive(k, a, field);
    for (const auto& pi : ordered_partitions(k)) {
      BaseElem lhs = a;
      for (auto it = pi.rbegin(); it != pi.rend(); ++it) lhs = detail::base_derive(*it, lhs, field);
      BaseElem rhs = BaseElem(Scalar(mpq_class(multinomial(pi))) * Scalar::one(field.characteristic)) * dk;
      r.expect(lhs == rhs, "pi=" + partition_string(pi) + ",a=" + a.to_string(field.parameter_names),
               [&] { return lhs.to_string(field.parameter_names); }, [&] { return rhs.to_string(field.parameter_names); });
      if (!r.ok) break;
    }
  }
  return r;
}

}  // namespace hsjet

#endif  // HSJET_ISO_THEOREMS_HPP
