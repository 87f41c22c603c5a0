#include <hsjet/diff_poly.hpp>
#include <hsjet/random.hpp>

#include <gtest/gtest.h>

using namespace hsjet;

namespace {

const FieldDescriptor kQs{0, {"s"}, 1};
const FieldDescriptor kQs2{0, {"s1", "s2"}, 2};
const NameTable kXY{{"x", "y"}, {"s"}};

BaseElem s() { return BaseElem::param(kQs, 0); }
DiffPoly x(std::size_t n = 1) { return diff_var(0, n); }
DiffPoly y(std::size_t n = 1) { return diff_var(1, n); }
DiffPoly sym(unsigned var, MultiIndex order) { return diff_symbol(DiffSymbol{var, std::move(order)}); }
std::string str(const DiffPoly& f) { return diff_poly_string(f, kXY); }

constexpr auto P = DerivationMode::Prolongation;
constexpr auto J = DerivationMode::Jet;

}  // namespace

TEST(SymbolDerive, Examples) {
  auto [c1, s1] = symbol_derive(MultiIndex{1}, DiffSymbol{0, {1}}, kQs);
  EXPECT_EQ(c1, Scalar(2));
  EXPECT_EQ(s1, (DiffSymbol{0, {2}}));

  auto [c2, s2] = symbol_derive(MultiIndex{0, 1}, DiffSymbol{0, {1, 0}}, kQs2);
  EXPECT_EQ(c2, Scalar(1));
  EXPECT_EQ(s2, (DiffSymbol{0, {1, 1}}));

  FieldDescriptor f3(3, {"s"}, 1);
  auto [c3, s3] = symbol_derive(MultiIndex{2}, DiffSymbol{0, {1}}, f3);
  EXPECT_TRUE(c3.is_zero());
  EXPECT_EQ(s3, (DiffSymbol{0, {3}}));
  EXPECT_TRUE(apply_d(MultiIndex{2}, sym(0, {1}), P, f3).is_zero());
}

TEST(ApplyD, Examples) {
  for (auto mode : {P, J}) EXPECT_EQ(str(apply_d(MultiIndex{1}, x() * x(), mode, kQs)), "2*x*d1x");
  DiffPoly f = x() * x() - diff_const(s());
  EXPECT_EQ(str(f), "x^2 - s");
  EXPECT_EQ(str(apply_d(MultiIndex{1}, f, P, kQs)), "2*x*d1x - 1");
  EXPECT_EQ(str(apply_d(MultiIndex{1}, f, J, kQs)), "2*x*d1x");
  EXPECT_EQ(apply_d(MultiIndex{2}, x() * y(), P, kQs),
            sym(0, {2}) * y() + sym(0, {1}) * sym(1, {1}) + x() * sym(1, {2}));
  EXPECT_EQ(str(apply_d(MultiIndex{2}, x() * y(), P, kQs)), "x*d2y + d1x*d1y + d2x*y");
  EXPECT_THROW(apply_d(MultiIndex{1, 0}, x(), P, kQs), Error);
}

TEST(ApplyD, RendersMixedOrders) {
  NameTable names{{}, {"s1", "s2"}};
  EXPECT_EQ(diff_poly_string(sym(2, {2, 0}), names), "d[2,0]x3");
  EXPECT_EQ(diff_poly_string(diff_var(2, 2), names), "x3");
  EXPECT_EQ(symbol_string(DiffSymbol{2, {2}}, names), "d2x3");
}

TEST(TaylorOracle, Examples) {
  DiffPoly f = x() * x() - diff_const(s());
  EXPECT_EQ(taylor_oracle(MultiIndex{1}, f, P, kQs), x().scaled(BaseElem(2)) * sym(0, {1}) - diff_const(BaseElem(1)));
  EXPECT_EQ(taylor_oracle(MultiIndex{0}, f, J, kQs), f);
  DiffPoly want = x(2) * sym(1, {1, 1}) + sym(0, {1, 0}) * sym(1, {0, 1}) + sym(0, {0, 1}) * sym(1, {1, 0}) +
                  sym(0, {1, 1}) * y(2);
  for (auto mode : {P, J}) EXPECT_EQ(taylor_oracle(MultiIndex{1, 1}, x(2) * y(2), mode, kQs2), want);
}

TEST(PolyEval, Examples) {
  std::map<DiffSymbol, BaseElem> at{{DiffSymbol{0, {0}}, s()}, {DiffSymbol{0, {1}}, BaseElem(1)}};
  EXPECT_EQ(poly_eval(x() * x() - diff_const(s()), at), s() * s() - s());
  EXPECT_EQ(poly_eval(x().scaled(BaseElem(2)) * sym(0, {1}) - diff_const(BaseElem(1)), at), 2 * s() - 1);
  EXPECT_TRUE(poly_eval(DiffPoly{}, {}).is_zero());
  EXPECT_THROW(poly_eval(y(), at), Error);
}

struct DiffCase {
  FieldDescriptor field;
  DerivationMode mode;
};

class DiffProperties : public ::testing::TestWithParam<DiffCase> {
protected:
  DiffPoly random_poly(Rng& rng) { return rng.diff_poly(GetParam().field, 3, 3, 3, 1); }
};

TEST_P(DiffProperties, MatchesTaylorOracle) {
  const auto& [f, mode] = GetParam();
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    DiffPoly g = random_poly(rng);
    MultiIndex a = rng.multi_index(f.derivation_count, 4);
    EXPECT_EQ(apply_d(a, g, mode, f), taylor_oracle(a, g, mode, f)) << a.to_string();
  }
}

TEST_P(DiffProperties, AdditiveAndLeibniz) {
  const auto& [f, mode] = GetParam();
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    DiffPoly g = random_poly(rng), h = random_poly(rng);
    MultiIndex a = rng.multi_index(f.derivation_count, 3);
    EXPECT_EQ(apply_d(a, g + h, mode, f), apply_d(a, g, mode, f) + apply_d(a, h, mode, f));
    DiffPoly sum;
    for (const auto& b : sub_indices(a)) sum += apply_d(b, g, mode, f) * apply_d(a - b, h, mode, f);
    EXPECT_EQ(apply_d(a, g * h, mode, f), sum);
  }
}

TEST_P(DiffProperties, Iterativity) {
  const auto& [f, mode] = GetParam();
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    DiffPoly g = random_poly(rng);
    MultiIndex a = rng.multi_index(f.derivation_count, 2), b = rng.multi_index(f.derivation_count, 2);
    EXPECT_EQ(apply_d(a, apply_d(b, g, mode, f), mode, f),
              apply_d(a + b, g, mode, f).scaled(BaseElem(comp_coeff(a, b, f))));
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, DiffProperties,
                         ::testing::Values(DiffCase{FieldDescriptor(0, {"s"}, 1), P},
                                           DiffCase{FieldDescriptor(0, {"s"}, 1), J},
                                           DiffCase{FieldDescriptor(0, {"s1", "s2"}, 2), P},
                                           DiffCase{FieldDescriptor(0, {"s1", "s2"}, 2), J},
                                           DiffCase{FieldDescriptor(5, {"s"}, 1), P},
                                           DiffCase{FieldDescriptor(5, {"s", "u"}, 2), J}));

TEST(JetMode, AgreesOnConstantCoefficients) {
  // coefficients drawn from the prime field are constants
  for (const auto& f : {FieldDescriptor(0, {"s"}, 1), FieldDescriptor(5, {"s1", "s2"}, 2)}) {
    FieldDescriptor constants(f.characteristic, {}, 0);
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
      DiffPoly g0 = rng.diff_poly(constants, 2, 3, 3, 0);
      DiffPoly g;
      for (const auto& [mono, c] : g0.terms()) {
        std::vector<DiffMonomial::Factor> fs;
        for (const auto& [sy, e] : mono.factors()) fs.emplace_back(DiffSymbol{sy.var, MultiIndex::zero(f.derivation_count)}, e);
        g.add_term(DiffMonomial::from_factors(std::move(fs)), c);
      }
      MultiIndex a = rng.multi_index(f.derivation_count, 3);
      EXPECT_EQ(apply_d(a, g, P, f), apply_d(a, g, J, f));
    }
  }
}
