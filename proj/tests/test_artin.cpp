#include <gtest/gtest.h>

#include "dgdef/artin.hpp"

using namespace dgdef;

namespace {

const Field F5 = Field::prime(5);

/// k[x,y]/(x^2, xy, y^2): every product of monomials vanishes.
ArtinAlgebra square_zero_plane(Field f) {
  std::vector<std::vector<Vec>> table(2, std::vector<Vec>(2, zero_vec(f, 2)));
  return ArtinAlgebra(f, {"x", "y"}, table);
}

}  // namespace

TEST(ArtinAlgebra, NilpotencyIndices) {
  EXPECT_EQ(nilpotency_index(ArtinAlgebra::residue_field(F5)), 1u);
  EXPECT_EQ(nilpotency_index(ArtinAlgebra::truncated_polynomial(F5, 2)), 3u);
  EXPECT_EQ(nilpotency_index(square_zero_plane(F5)), 2u);
  EXPECT_EQ(nilpotency_index(ArtinAlgebra::truncated_polynomial(Field::rationals(), 5)), 6u);
}

TEST(ArtinAlgebra, PowersOfMaximalIdeal) {
  auto a = ArtinAlgebra::truncated_polynomial(F5, 3);
  EXPECT_EQ(a.power(1).size(), 3u);
  EXPECT_EQ(a.power(2).size(), 2u);
  EXPECT_EQ(a.power(3).size(), 1u);
  EXPECT_TRUE(a.power(4).empty());
  EXPECT_EQ(a.multiply(unit_vec(F5, 3, 0), unit_vec(F5, 3, 1)), unit_vec(F5, 3, 2));
}

TEST(ArtinAlgebra, RejectsBadTables) {
  // x*y = x, y*x = 0: not commutative.
  std::vector<std::vector<Vec>> t(2, std::vector<Vec>(2, zero_vec(F5, 2)));
  t[0][1] = unit_vec(F5, 2, 0);
  EXPECT_THROW(ArtinAlgebra(F5, {"x", "y"}, t), StructureError);
  // x*x = x: idempotent, never nilpotent.
  std::vector<std::vector<Vec>> idem(1, std::vector<Vec>(1, unit_vec(F5, 1, 0)));
  EXPECT_THROW(ArtinAlgebra(F5, {"x"}, idem), StructureError);
}

TEST(ArtinAlgebra, TablesAreSymmetricAndAssociative) {
  for (unsigned n = 1; n <= 5; ++n) {
    auto a = ArtinAlgebra::truncated_polynomial(F5, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        EXPECT_EQ(a.product(i, j), a.product(j, i));
        for (std::size_t k = 0; k < n; ++k)
          EXPECT_EQ(a.multiply(a.product(i, j), unit_vec(F5, n, k)), a.multiply(unit_vec(F5, n, i), a.product(j, k)));
      }
  }
}

TEST(SmallExtension, CurvilinearPassesUpToFive) {
  for (unsigned n = 1; n <= 5; ++n) {
    auto e = curvilinear(F5, n);
    EXPECT_EQ(e.big.dim(), n);
    EXPECT_EQ(e.small.dim(), n - 1);
    EXPECT_TRUE(validate_small_extension(e).all_passed()) << "n = " << n;
    Matrix s = e.section();
    EXPECT_EQ(e.projection * s, Matrix::identity(F5, n - 1));
  }
  EXPECT_THROW(curvilinear(F5, 0), std::invalid_argument);
}

TEST(SmallExtension, CurvilinearTowerComposes) {
  // k[x]/(x^{d+1}) -> ... -> k: composites of the stage projections are the
  // truncations, and every stage is small.
  const unsigned d = 4;
  Matrix composite = Matrix::identity(F5, d);
  for (unsigned n = d; n >= 1; --n) {
    auto e = curvilinear(F5, n);
    ASSERT_TRUE(validate_small_extension(e).all_passed());
    composite = e.projection * composite;
    EXPECT_EQ(composite.rows(), n - 1);
    for (unsigned i = 0; i + 1 < n; ++i) EXPECT_TRUE(composite(i, i).is_one());
  }
}

TEST(SmallExtension, NonSmallKernelFails) {
  auto b = ArtinAlgebra::truncated_polynomial(F5, 2);
  SmallExtension e{b, ArtinAlgebra::residue_field(F5), Matrix(F5, 0, 2), {unit_vec(F5, 2, 0), unit_vec(F5, 2, 1)}};
  auto report = validate_small_extension(e);
  EXPECT_TRUE(report.find("surjective")->passed);
  EXPECT_TRUE(report.find("kernel")->passed);
  const Check* sq = report.find("m_B*J=0");
  ASSERT_NE(sq, nullptr);
  EXPECT_FALSE(sq->passed);
  EXPECT_NE(sq->witness.find("x"), std::string::npos);
}

TEST(SmallExtension, TwoVariableExtensionPasses) {
  auto b = square_zero_plane(F5);
  auto a = ArtinAlgebra::truncated_polynomial(F5, 1);
  Matrix p(F5, 1, 2);
  p.set(0, 0, Scalar::one(F5));
  SmallExtension e{b, a, p, {unit_vec(F5, 2, 1)}};
  EXPECT_TRUE(validate_small_extension(e).all_passed());
  SmallExtension built = two_variable(F5);
  EXPECT_TRUE(validate_small_extension(built).all_passed());
  EXPECT_EQ(built.big, b);
  EXPECT_EQ(built.small, a);
}

TEST(SmallExtension, WrongKernelReported) {
  auto e = curvilinear(F5, 2);
  e.kernel = {unit_vec(F5, 2, 0)};
  auto report = validate_small_extension(e);
  EXPECT_FALSE(report.find("kernel")->passed);
}

TEST(ArtinAlgebra, ExpCharacteristicGuard) {
  EXPECT_NO_THROW(require_exp_characteristic(ArtinAlgebra::truncated_polynomial(Field::prime(3), 2)));
  EXPECT_THROW(require_exp_characteristic(ArtinAlgebra::truncated_polynomial(Field::prime(3), 3)), std::domain_error);
  EXPECT_NO_THROW(require_exp_characteristic(ArtinAlgebra::truncated_polynomial(Field::rationals(), 7)));
}
