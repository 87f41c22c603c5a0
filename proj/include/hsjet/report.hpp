#ifndef HSJET_REPORT_HPP
#define HSJET_REPORT_HPP

#include <hsjet/exact_arith.hpp>

#include <string>
#include <vector>

namespace hsjet {

/// Outcome of one verification check; keeps the first counterexample.
struct CheckReport {
  std::string check;
  std::string params;
  unsigned trials = 0;
  bool ok = true;
  std::string at, lhs, rhs;

  CheckReport() = default;
  CheckReport(std::string name, std::string p) : check(std::move(name)), params(std::move(p)) {}

  /// Counts one case; records a failure the first time `equal` is false.
  template <class LhsFn, class RhsFn>
  bool expect(bool equal, const std::string& witness, LhsFn&& lhs_text, RhsFn&& rhs_text) {
    ++trials;
    if (!equal && ok) {
      ok = false;
      at = witness;
      lhs = lhs_text();
      rhs = rhs_text();
    }
    return equal;
  }

  void error(const std::string& witness, const std::string& what) {
    if (!ok) return;
    ok = false;
    at = witness;
    lhs = "error: " + what;
    rhs = "-";
  }

  std::string line() const {
    if (ok) return "OK " + check + " params=" + params + " trials=" + std::to_string(trials);
    return "FAIL " + check + " at=" + at + " lhs=" + lhs + " rhs=" + rhs;
  }
};

inline bool all_ok(const std::vector<CheckReport>& rs) {
  for (const auto& r : rs)
    if (!r.ok) return false;
  return true;
}

inline std::string field_params(const FieldDescriptor& f) {
  std::string s = "char=" + std::to_string(f.characteristic) + ",n=" + std::to_string(f.derivation_count) + ",params=";
  for (std::size_t i = 0; i < f.parameter_names.size(); ++i) s += (i ? ":" : "") + f.parameter_names[i];
  return s;
}

}  // namespace hsjet

#endif  // HSJET_REPORT_HPP
