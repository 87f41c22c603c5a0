#ifndef HSJET_EXACT_ARITH_HPP
#define HSJET_EXACT_ARITH_HPP

#include <gmpxx.h>

#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hsjet {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A coefficient field k_0 (Q or F_p) together with the rational function
/// field k_0(s_1..s_r) built on it and n standard iterative Hasse
/// derivations: derivation i differentiates with respect to parameter i.
struct FieldDescriptor {
  std::uint64_t characteristic = 0;
  std::vector<std::string> parameter_names;
  std::size_t derivation_count = 0;

  FieldDescriptor() = default;

  FieldDescriptor(std::uint64_t p, std::vector<std::string> names, std::size_t n)
      : characteristic(p), parameter_names(std::move(names)), derivation_count(n) {
    validate();
  }

  void validate() const {
    if (characteristic == 1 || (characteristic != 0 && !is_prime(characteristic)))
      throw Error("characteristic " + std::to_string(characteristic) + " is neither 0 nor prime");
    if (characteristic >= (std::uint64_t{1} << 31))
      throw Error("characteristic too large");
    std::set<std::string> seen;
    for (const auto& s : parameter_names)
      if (!seen.insert(s).second) throw Error("duplicate parameter name '" + s + "'");
    if (derivation_count > parameter_names.size())
      throw Error("more derivations than parameters");
  }

  std::size_t parameter_count() const { return parameter_names.size(); }
  bool trivial() const { return derivation_count == 0; }

  static bool is_prime(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
      if (v % d == 0) return false;
    return true;
  }

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

/// Exact element of Q or F_p.
///
/// A scalar carries its own characteristic. Rational scalars (characteristic
/// 0) combine with prime-field scalars by reduction mod p, so integer
/// literals can be mixed freely with field elements.
class Scalar {
public:
  Scalar() = default;
  Scalar(long v) : q_(v) {}  // NOLINT: implicit integer literals are intended
  explicit Scalar(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  Scalar(long num, long den) : q_(num, den) {
    if (den == 0) throw Error("zero denominator");
    q_.canonicalize();
  }

  static Scalar mod(const mpz_class& v, std::uint64_t p) {
    if (p == 0) return Scalar(mpq_class(v));
    Scalar s;
    s.p_ = p;
    mpz_class r = v % mpz_class(static_cast<unsigned long>(p));
    if (r < 0) r += static_cast<unsigned long>(p);
    s.r_ = r.get_ui();
    return s;
  }
  static Scalar from_int(long v, std::uint64_t p) { return mod(mpz_class(v), p); }
  static Scalar one(std::uint64_t p) { return from_int(1, p); }
  static Scalar zero(std::uint64_t p) { return from_int(0, p); }

  std::uint64_t characteristic() const { return p_; }
  bool is_zero() const { return p_ ? r_ == 0 : q_ == 0; }
  bool is_one() const { return p_ ? r_ == 1 : q_ == 1; }
  /// Only meaningful in characteristic 0; prime-field residues are never negative.
  bool is_negative() const { return p_ == 0 && q_ < 0; }
  const mpq_class& rational() const { return q_; }
  std::uint64_t residue() const { return r_; }

  /// Reinterpret in characteristic p (p = 0 keeps rationals as they are).
  Scalar in_char(std::uint64_t p) const {
    if (p == p_) return *this;
    if (p_ != 0) throw Error("cannot move a residue between different prime fields");
    Scalar num = mod(q_.get_num(), p), den = mod(q_.get_den(), p);
    return num / den;
  }

  Scalar operator-() const {
    Scalar s = *this;
    if (p_) s.r_ = r_ ? p_ - r_ : 0;
    else s.q_ = -q_;
    return s;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.p_ == b.p_) {
      Scalar r;
      r.p_ = a.p_;
      if (a.p_) r.r_ = (a.r_ + b.r_) % a.p_;
      else r.q_ = a.q_ + b.q_;
      return r;
    }
    auto [x, y] = coerce(a, b);
    if (x.p_) {
      x.r_ = (x.r_ + y.r_) % x.p_;
      return x;
    }
    x.q_ += y.q_;
    return x;
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.p_ == b.p_) {
      Scalar r;
      r.p_ = a.p_;
      if (a.p_) r.r_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(a.r_) * b.r_) % a.p_);
      else r.q_ = a.q_ * b.q_;
      return r;
    }
    auto [x, y] = coerce(a, b);
    if (x.p_) {
      x.r_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x.r_) * y.r_) % x.p_);
      return x;
    }
    x.q_ *= y.q_;
    return x;
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar inverse() const {
    if (is_zero()) throw Error("division by zero");
    if (p_) {
      mpz_class inv;
      mpz_class r(static_cast<unsigned long>(r_)), p(static_cast<unsigned long>(p_));
      mpz_invert(inv.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
      return mod(inv, p_);
    }
    return Scalar(mpq_class(1) / q_);
  }

  Scalar pow(unsigned e) const {
    Scalar r = one(p_), b = *this;
    while (e) {
      if (e & 1U) r *= b;
      b *= b;
      e >>= 1U;
    }
    return r;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.p_ == b.p_) return a.p_ ? a.r_ == b.r_ : a.q_ == b.q_;
    auto [x, y] = coerce(a, b);
    return x.r_ == y.r_;
  }

  std::string to_string() const { return p_ ? std::to_string(r_) : q_.get_str(); }

private:
  static std::pair<Scalar, Scalar> coerce(const Scalar& a, const Scalar& b) {
    if (a.p_ == b.p_) return {a, b};
    if (a.p_ == 0) return {a.in_char(b.p_), b};
    if (b.p_ == 0) return {a, b.in_char(a.p_)};
    throw Error("mixing scalars of different characteristic");
  }

  mpq_class q_;
  std::uint64_t p_ = 0;
  std::uint64_t r_ = 0;
};

inline bool is_zero(const Scalar& s) { return s.is_zero(); }
inline Scalar unit_like(const Scalar& s) { return Scalar::one(s.characteristic()); }

/// Exact C(n, k) as a natural; 0 when k > n.
inline mpz_class binom_exact(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// C(n, k) reduced into the field's characteristic.
inline Scalar binom(unsigned long n, unsigned long k, const FieldDescriptor& field) {
  return Scalar::mod(binom_exact(n, k), field.characteristic);
}

/// k!/(a_1!...a_r!) with k the sum of the parts.
inline mpz_class multinomial(std::span<const unsigned> parts) {
  if (parts.empty()) throw Error("multinomial of an empty sequence");
  mpz_class result = 1;
  unsigned long running = 0;
  for (unsigned a : parts) {
    running += a;
    result *= binom_exact(running, a);
  }
  return result;
}

inline mpz_class factorial(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace hsjet

#endif  // HSJET_EXACT_ARITH_HPP
