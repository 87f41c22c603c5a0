#ifndef HSJET_RANDOM_HPP
#define HSJET_RANDOM_HPP

#include <hsjet/base_field.hpp>
#include <hsjet/diff_poly.hpp>
#include <hsjet/multi_index.hpp>
#include <hsjet/presentations.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace hsjet {

/// Seeded generator of random algebraic test data.
///
/// Draws go through mt19937_64 (whose output sequence is fixed by the
/// standard) with plain modular reduction, so a seed reproduces the same
/// data on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  std::uint64_t next() { return g_(); }
  /// Uniform-ish integer in [lo, hi].
  long uniform(long lo, long hi) { return lo + static_cast<long>(g_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool chance(unsigned num, unsigned den) { return g_() % den < num; }

  Scalar scalar(std::uint64_t p, bool nonzero = false) {
    for (;;) {
      long a = uniform(-3, 3);
      Scalar s = (p == 0 && chance(1, 4)) ? Scalar(a, uniform(1, 3)) : Scalar::from_int(a, p);
      if (!nonzero || !s.is_zero()) return s;
    }
  }

  ParamPoly param_poly(const FieldDescriptor& field, unsigned max_terms, unsigned max_deg) {
    ParamPoly out;
    const std::uint64_t p = field.characteristic;
    unsigned terms = static_cast<unsigned>(uniform(1, max_terms));
    for (unsigned t = 0; t < terms; ++t) {
      std::vector<ParamMono::Factor> fs;
      unsigned deg = static_cast<unsigned>(uniform(0, max_deg));
      for (unsigned d = 0; d < deg && field.parameter_count(); ++d)
        fs.emplace_back(static_cast<unsigned>(uniform(0, static_cast<long>(field.parameter_count()) - 1)), 1);
      out.add_term(ParamMono::from_factors(std::move(fs)), scalar(p, true));
    }
    return out;
  }

  /// Polynomial or, with probability frac_num/frac_den, a genuine quotient.
  BaseElem base_elem(const FieldDescriptor& field, unsigned frac_num = 1, unsigned frac_den = 3) {
    ParamPoly num = param_poly(field, 3, 2);
    if (field.parameter_count() == 0 || !chance(frac_num, frac_den)) return BaseElem(num, ParamPoly(Scalar::one(field.characteristic)));
    ParamPoly den;
    while (den.is_zero() || den.is_constant()) den = param_poly(field, 2, 2);
    return BaseElem(num, den);
  }

  BaseElem nonzero_base_elem(const FieldDescriptor& field, unsigned frac_num = 1, unsigned frac_den = 3) {
    for (;;) {
      BaseElem b = base_elem(field, frac_num, frac_den);
      if (!b.is_zero()) return b;
    }
  }

  MultiIndex multi_index(std::size_t n, unsigned max_size) {
    MultiIndex a(n);
    unsigned total = static_cast<unsigned>(uniform(0, max_size));
    for (unsigned k = 0; k < total && n; ++k) a[static_cast<std::size_t>(uniform(0, static_cast<long>(n) - 1))] += 1;
    return a;
  }

  /// Random differential polynomial with up to max_terms terms of degree <=
  /// max_deg in q variables whose symbols have order size <= max_order.
  DiffPoly diff_poly(const FieldDescriptor& field, unsigned q, unsigned max_terms, unsigned max_deg,
                     unsigned max_order, unsigned frac_num = 1, unsigned frac_den = 4) {
    DiffPoly out;
    const std::size_t n = field.derivation_count;
    unsigned terms = static_cast<unsigned>(uniform(1, max_terms));
    for (unsigned t = 0; t < terms; ++t) {
      std::vector<DiffMonomial::Factor> fs;
      unsigned deg = static_cast<unsigned>(uniform(0, max_deg));
      for (unsigned d = 0; d < deg; ++d)
        fs.emplace_back(DiffSymbol{static_cast<unsigned>(uniform(0, q - 1)), multi_index(n, max_order)}, 1);
      out.add_term(DiffMonomial::from_factors(std::move(fs)), nonzero_base_elem(field, frac_num, frac_den));
    }
    return out;
  }

  PointAssignment point(const FieldDescriptor& field, unsigned q) {
    PointAssignment pt;
    for (unsigned i = 0; i < q; ++i) pt.push_back(base_elem(field));
    return pt;
  }

  /// Variety with generators sum_i (x_i - a_i) g_i for random g_i, so pt lies on it.
  VarietyPresentation variety_through(const FieldDescriptor& field, const PointAssignment& pt, unsigned gens) {
    const auto q = static_cast<unsigned>(pt.size());
    const std::size_t n = field.derivation_count;
    VarietyPresentation v{field, q, {}, {}};
    for (unsigned j = 0; j < gens; ++j) {
      DiffPoly f;
      for (unsigned i = 0; i < q; ++i)
        if (chance(1, 2) || i + 1 == q)
          f += (diff_var(i, n, field.characteristic) - diff_const(pt[i])) * diff_poly(field, q, 2, 1, 0);
      v.generators.push_back(std::move(f));
    }
    return v;
  }

private:
  std::mt19937_64 g_;
};

}  // namespace hsjet

#endif  // HSJET_RANDOM_HPP
