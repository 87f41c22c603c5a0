#include <hsjet/random.hpp>
#include <hsjet/twist.hpp>

#include <gtest/gtest.h>

#include <functional>

using namespace hsjet;

namespace {

const FieldDescriptor kQs{0, {"s"}, 1};
const FieldDescriptor kQs2{0, {"s1", "s2"}, 2};
const FieldDescriptor kF5{5, {"s"}, 1};

BaseElem s() { return BaseElem::param(kQs, 0); }

// Oracle: every vector in [0,m]^n with entry sum <= m.
std::size_t brute_count(std::size_t n, unsigned m) {
  std::size_t count = 0;
  std::vector<unsigned> v(n, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned used) {
    if (pos == n) {
      ++count;
      return;
    }
    for (unsigned x = 0; x + used <= m; ++x) {
      v[pos] = x;
      rec(pos + 1, used + x);
    }
  };
  rec(0, 0);
  return count;
}

BaseSeries series(std::size_t n, unsigned m, std::initializer_list<std::pair<MultiIndex, BaseElem>> terms) {
  BaseSeries r(n, m);
  for (const auto& [a, c] : terms) r.add_term(a, c);
  return r;
}

std::string str(const BaseSeries& x, const FieldDescriptor& f = kQs) { return series_string(x, f); }

}  // namespace

TEST(Enumerate, SingleDerivation) {
  auto v = enumerate_multiindices(1, 3);
  ASSERT_EQ(v.size(), 4U);
  for (unsigned i = 0; i < 4; ++i) EXPECT_EQ(v[i], MultiIndex{i});
}

TEST(Enumerate, TwoDerivationsGradedLex) {
  auto v = enumerate_multiindices(2, 2);
  std::vector<MultiIndex> want{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  EXPECT_EQ(v, want);
  EXPECT_EQ(brute_count(2, 2), 6U);
}

TEST(Enumerate, CountIsBinomial) {
  EXPECT_EQ(enumerate_multiindices(3, 4).size(), 35U);
  EXPECT_EQ(brute_count(3, 4), 35U);
  for (std::size_t n = 1; n <= 4; ++n)
    for (unsigned m = 0; m <= 6; ++m) {
      auto v = enumerate_multiindices(n, m);
      EXPECT_EQ(v.size(), brute_count(n, m));
      EXPECT_EQ(mpz_class(v.size()), binom_exact(n + m, n));
      EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
    }
}

TEST(TruncMul, Examples) {
  BaseElem one(1);
  auto a = series(1, 1, {{{0}, one}, {{1}, one}});
  auto b = series(1, 1, {{{0}, one}, {{1}, BaseElem(-1)}});
  EXPECT_EQ(trunc_mul(a, b), BaseSeries::constant(1, 1, one));

  auto a2 = series(1, 2, {{{0}, one}, {{1}, one}});
  auto b2 = series(1, 2, {{{0}, one}, {{1}, BaseElem(-1)}});
  EXPECT_EQ(trunc_mul(a2, b2), series(1, 2, {{{0}, one}, {{2}, BaseElem(-1)}}));

  auto t12 = series(2, 2, {{{1, 0}, one}, {{0, 1}, one}});
  EXPECT_EQ(trunc_mul(t12, t12), series(2, 2, {{{2, 0}, one}, {{1, 1}, BaseElem(2)}, {{0, 2}, one}}));
}

TEST(TruncMul, MismatchedBoundsThrow) {
  EXPECT_THROW(trunc_mul(BaseSeries(1, 1), BaseSeries(1, 2)), Error);
  EXPECT_THROW(trunc_mul(BaseSeries(1, 1), BaseSeries(2, 1)), Error);
}

TEST(TwistExpand, Examples) {
  EXPECT_EQ(str(twist_expand(s(), 2, kQs)), "s + t1");
  EXPECT_EQ(str(twist_expand(s() * s(), 2, kQs)), "s^2 + 2*s*t1 + t1^2");
  // (s + t)^-1 = sum_k (-1)^k t^k / s^(k+1)
  auto inv = twist_expand(s().inverse(), 2, kQs);
  EXPECT_EQ(inv, series(1, 2, {{{0}, s().inverse()}, {{1}, -s().pow(2).inverse()}, {{2}, s().pow(3).inverse()}}));
  EXPECT_EQ(str(inv), "1/s - 1/s^2*t1 + 1/s^3*t1^2");
}

TEST(TwistInverse, Examples) {
  auto c = twist_inverse(BaseSeries::constant(1, 1, s()), kQs);
  EXPECT_EQ(c, series(1, 1, {{{0}, s()}, {{1}, BaseElem(-1)}}));
  EXPECT_EQ(twist_apply(c, kQs), BaseSeries::constant(1, 1, s()));
  EXPECT_EQ(twist_inverse(BaseSeries::constant(1, 3, BaseElem(1)), kQs), BaseSeries::constant(1, 3, BaseElem(1)));
}

class TwistProperties : public ::testing::TestWithParam<FieldDescriptor> {
protected:
  BaseSeries random_series(Rng& rng, unsigned m) {
    const FieldDescriptor& f = GetParam();
    BaseSeries r(f.derivation_count, m);
    for (const auto& a : enumerate_multiindices(f.derivation_count, m))
      if (rng.chance(2, 3)) r.add_term(a, rng.base_elem(f));
    return r;
  }
};

TEST_P(TwistProperties, RoundTrips) {
  const FieldDescriptor& f = GetParam();
  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    unsigned m = static_cast<unsigned>(rng.uniform(0, 3));
    BaseSeries c = random_series(rng, m);
    EXPECT_EQ(twist_inverse(twist_apply(c, f), f), c);
    EXPECT_EQ(twist_apply(twist_inverse(c, f), f), c);
  }
}

TEST_P(TwistProperties, ExpandIsMultiplicative) {
  const FieldDescriptor& f = GetParam();
  Rng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    BaseElem a = rng.base_elem(f), b = rng.base_elem(f);
    unsigned m = static_cast<unsigned>(rng.uniform(0, 3));
    EXPECT_EQ(twist_expand(a * b, m, f), trunc_mul(twist_expand(a, m, f), twist_expand(b, m, f)));
    EXPECT_EQ(twist_expand(a + b, m, f), twist_expand(a, m, f) + twist_expand(b, m, f));
  }
}

TEST_P(TwistProperties, TwistedScalarAction) {
  const FieldDescriptor& f = GetParam();
  Rng rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    unsigned m = static_cast<unsigned>(rng.uniform(0, 3));
    BaseSeries c = random_series(rng, m);
    BaseElem r = rng.base_elem(f);
    EXPECT_EQ(twist_apply(c.scaled(r), f), trunc_mul(twist_expand(r, m, f), twist_apply(c, f)));
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, TwistProperties,
                         ::testing::Values(FieldDescriptor(0, {"s"}, 1), FieldDescriptor(0, {"s1", "s2"}, 2),
                                           FieldDescriptor(5, {"s"}, 1)));
