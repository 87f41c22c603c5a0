#include <hsjet/exact_arith.hpp>
#include <hsjet/multi_index.hpp>

#include <gtest/gtest.h>

#include <vector>

using namespace hsjet;

namespace {

const FieldDescriptor kQ{0, {"s"}, 1};
const FieldDescriptor kF5{5, {"s"}, 1};

// Brute-force factorial oracle, independent of mpz_bin_uiui.
mpz_class fact(unsigned n) {
  mpz_class r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

mpz_class binom_by_factorials(unsigned n, unsigned k) {
  if (k > n) return 0;
  return fact(n) / (fact(k) * fact(n - k));
}

}  // namespace

TEST(Binom, Examples) {
  EXPECT_EQ(binom(4, 2, kQ), Scalar(6));
  EXPECT_TRUE(binom(5, 1, kF5).is_zero());
  EXPECT_TRUE(binom(2, 3, kQ).is_zero());
}

TEST(Binom, PascalRecurrenceBeforeReduction) {
  for (unsigned n = 1; n <= 30; ++n)
    for (unsigned k = 1; k <= n; ++k) EXPECT_EQ(binom_exact(n, k), binom_exact(n - 1, k - 1) + binom_exact(n - 1, k));
}

TEST(Binom, ReductionMatchesFactorialOracle) {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    FieldDescriptor f(p, {"s"}, 1);
    for (unsigned n = 0; n <= 20; ++n)
      for (unsigned k = 0; k <= n + 1; ++k) {
        mpz_class ref = binom_by_factorials(n, k) % static_cast<unsigned long>(p);
        EXPECT_EQ(binom(n, k, f).residue(), ref.get_ui()) << n << " choose " << k << " mod " << p;
      }
  }
}

TEST(Multinomial, Examples) {
  std::vector<unsigned> a{1, 2}, b{1, 1, 1}, c{3};
  EXPECT_EQ(multinomial(a), 3);
  EXPECT_EQ(multinomial(b), 6);
  EXPECT_EQ(multinomial(c), 1);
  EXPECT_THROW(multinomial(std::vector<unsigned>{}), Error);
}

TEST(Multinomial, FactorialIdentityUpToTen) {
  // every composition of every k <= 10
  for (unsigned k = 1; k <= 10; ++k) {
    for (unsigned mask = 0; mask < (1U << (k - 1)); ++mask) {
      std::vector<unsigned> parts;
      unsigned run = 1;
      for (unsigned i = 0; i + 1 < k; ++i) {
        if (mask & (1U << i)) {
          parts.push_back(run);
          run = 1;
        } else {
          ++run;
        }
      }
      parts.push_back(run);
      mpz_class prod = 1;
      for (unsigned a : parts) prod *= fact(a);
      EXPECT_EQ(multinomial(parts) * prod, fact(k));
    }
  }
}

TEST(CompCoeff, Examples) {
  FieldDescriptor q2(0, {"s", "u"}, 2);
  EXPECT_EQ(comp_coeff(MultiIndex{1}, MultiIndex{1}, kQ), Scalar(2));
  EXPECT_EQ(comp_coeff(MultiIndex{1, 0}, MultiIndex{0, 1}, q2), Scalar(1));
  mpz_class ref = binom_by_factorials(3, 2) * binom_by_factorials(2, 1);
  EXPECT_EQ(comp_coeff(MultiIndex{2, 1}, MultiIndex{1, 1}, q2), Scalar(mpq_class(ref)));
  EXPECT_EQ(ref, 6);
  EXPECT_THROW(comp_coeff(MultiIndex{1}, MultiIndex{1, 0}, q2), Error);
}

TEST(CompCoeff, Symmetric) {
  FieldDescriptor q3(0, {"a", "b", "c"}, 3);
  for (const auto& a : enumerate_multiindices(3, 4))
    for (const auto& b : enumerate_multiindices(3, 3)) EXPECT_EQ(comp_coeff(a, b, q3), comp_coeff(b, a, q3));
}

TEST(FieldDescriptor, Validation) {
  EXPECT_THROW(FieldDescriptor(4, {"s"}, 1), Error);
  EXPECT_THROW(FieldDescriptor(1, {}, 0), Error);
  EXPECT_THROW(FieldDescriptor(0, {"s", "s"}, 1), Error);
  EXPECT_THROW(FieldDescriptor(0, {"s"}, 2), Error);
  EXPECT_NO_THROW(FieldDescriptor(7, {"s", "u"}, 1));
}

TEST(Scalar, PrimeFieldArithmetic) {
  Scalar a = Scalar::from_int(3, 5), b = Scalar::from_int(4, 5);
  EXPECT_EQ((a + b).residue(), 2U);
  EXPECT_EQ((a * b).residue(), 2U);
  EXPECT_EQ((a / b * b), a);
  EXPECT_EQ((-a).residue(), 2U);
  // rational literals reduce into the prime field
  EXPECT_EQ(Scalar(1, 2) * Scalar::from_int(2, 5), Scalar::one(5));
}

TEST(Scalar, RationalNormalization) {
  Scalar h(2, 4);
  EXPECT_EQ(h.rational().get_num(), 1);
  EXPECT_EQ(h.rational().get_den(), 2);
  EXPECT_THROW(Scalar(1, 0), Error);
  EXPECT_THROW(Scalar(0).inverse(), Error);
}
