#include <gtest/gtest.h>

#include "dgdef/dgla.hpp"

using namespace dgdef;

namespace {

const Field Q = Field::rationals();
const Field F5 = Field::prime(5);

Vec vec(Field f, std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.emplace_back(f, x);
  return v;
}

/// L^1 = <e>, L^2 = <f>, d = 0, [e,e] = f.
Dgla f2(Field f) {
  GradedSpace s({{"e", 1}, {"f", 2}});
  return Dgla(f, s, Matrix(f, 2, 2), {{0, 0, vec(f, {0, 1})}}, "F2");
}

const Check& verdict(const CheckList& r, const std::string& name) {
  const Check* c = r.find(name);
  EXPECT_NE(c, nullptr) << name;
  return *c;
}

void expect_only_failure(const CheckList& r, const std::string& name) {
  for (const auto& c : r.checks()) {
    if (c.name == name) {
      EXPECT_FALSE(c.passed) << name;
      EXPECT_FALSE(c.witness.empty());
    } else {
      EXPECT_TRUE(c.passed) << c.name << ": " << c.witness;
    }
  }
}

}  // namespace

TEST(Dgla, AbelianPasses) {
  Dgla g = Dgla::abelian(Q, GradedSpace({{"a", 0}, {"b", 1}, {"c", 2}}));
  EXPECT_TRUE(validate_dgla(g).all_passed());
  EXPECT_TRUE(is_abelian(g));
}

TEST(Dgla, ZeroDglaIsValid) {
  Dgla g = Dgla::abelian(Q, GradedSpace{});
  EXPECT_TRUE(validate_dgla(g).all_passed());
  EXPECT_EQ(g.size(), 0u);
}

TEST(Dgla, F2PassesAllAxioms) {
  for (Field f : {Q, F5}) {
    Dgla g = f2(f);
    auto r = validate_dgla(g);
    EXPECT_TRUE(r.all_passed());
    EXPECT_EQ(r.checks().size(), 5u);
    EXPECT_FALSE(is_abelian(g));
    EXPECT_EQ(g.bracket(vec(f, {1, 0}), vec(f, {1, 0})), vec(f, {0, 1}));
  }
}

TEST(Dgla, ReverseBracketDerivedByAntisymmetry) {
  // Degree-0 Lie algebra [x,u] = u: the reverse entry gets a minus sign.
  GradedSpace s({{"x", 0}, {"u", 0}});
  Dgla g(Q, s, Matrix(Q, 2, 2), {{0, 1, vec(Q, {0, 1})}});
  EXPECT_EQ(g.basis_bracket(1, 0), vec(Q, {0, -1}));
  EXPECT_EQ(g.canonical_brackets().size(), 1u);
  // Odd-odd pairs are symmetric.
  GradedSpace odd({{"a", 1}, {"b", 1}, {"c", 2}});
  Dgla h(Q, odd, Matrix(Q, 3, 3), {{0, 1, vec(Q, {0, 0, 1})}});
  EXPECT_EQ(h.basis_bracket(1, 0), vec(Q, {0, 0, 1}));
}

TEST(Dgla, DuplicateBracketRejected) {
  GradedSpace s({{"e", 1}, {"f", 2}});
  EXPECT_THROW(Dgla(Q, s, Matrix(Q, 2, 2), {{0, 0, vec(Q, {0, 1})}, {0, 0, vec(Q, {0, 1})}}), StructureError);
}

TEST(DglaMutants, DegreeViolation) {
  GradedSpace s({{"x", 0}, {"y", 0}});
  Matrix d(Q, 2, 2);
  d.set(1, 0, Scalar::one(Q));
  auto r = validate_dgla(Dgla(Q, s, d, {}));
  expect_only_failure(r, "degrees");
  EXPECT_NE(verdict(r, "degrees").witness.find("d(x)"), std::string::npos);
}

TEST(DglaMutants, DifferentialNotSquareZero) {
  GradedSpace s({{"x", 0}, {"y", 1}, {"z", 2}});
  Matrix d(Q, 3, 3);
  d.set(1, 0, Scalar::one(Q));
  d.set(2, 1, Scalar::one(Q));
  auto r = validate_dgla(Dgla(Q, s, d, {}));
  expect_only_failure(r, "d^2=0");
  EXPECT_NE(verdict(r, "d^2=0").witness.find("d(d(x))"), std::string::npos);
}

TEST(DglaMutants, AntisymmetryBroken) {
  GradedSpace s({{"e", 1}, {"f", 2}, {"g", 3}});
  Dgla g(Q, s, Matrix(Q, 3, 3), {{0, 1, vec(Q, {0, 0, 1})}, {1, 0, vec(Q, {0, 0, 1})}});
  auto r = validate_dgla(g);
  expect_only_failure(r, "antisymmetry");
  EXPECT_NE(verdict(r, "antisymmetry").witness.find("[e,f]"), std::string::npos);
}

TEST(DglaMutants, LeibnizBroken) {
  // [x,u] = u with d u = v, but [x,v] missing.
  GradedSpace s({{"x", 0}, {"u", 0}, {"v", 1}});
  Matrix d(Q, 3, 3);
  d.set(2, 1, Scalar::one(Q));
  auto r = validate_dgla(Dgla(Q, s, d, {{0, 1, vec(Q, {0, 1, 0})}}));
  expect_only_failure(r, "leibniz");
  EXPECT_NE(verdict(r, "leibniz").witness.find("d[x,u]"), std::string::npos);
  // Restoring [x,v] = v repairs it.
  auto fixed = validate_dgla(Dgla(Q, s, d, {{0, 1, vec(Q, {0, 1, 0})}, {0, 2, vec(Q, {0, 0, 1})}}));
  EXPECT_TRUE(fixed.all_passed());
}

TEST(DglaMutants, JacobiBroken) {
  GradedSpace s({{"a", 0}, {"b", 0}, {"c", 0}});
  auto r = validate_dgla(Dgla(Q, s, Matrix(Q, 3, 3), {{0, 1, vec(Q, {1, 0, 0})}, {0, 2, vec(Q, {0, 1, 0})}}));
  expect_only_failure(r, "jacobi");
}

TEST(DglaMutants, SectionExampleFailsAntisymmetry) {
  // [e,f] = f and [f,e] = f in degrees 1, 2.
  GradedSpace s({{"e", 1}, {"f", 2}});
  Dgla g(Q, s, Matrix(Q, 2, 2), {{0, 0, vec(Q, {0, 1})}, {0, 1, vec(Q, {0, 1})}, {1, 0, vec(Q, {0, 1})}});
  auto r = validate_dgla(g);
  EXPECT_FALSE(verdict(r, "antisymmetry").passed);
  EXPECT_NE(verdict(r, "antisymmetry").witness.find("[e,f]"), std::string::npos);
}

TEST(DglaMorphism, IdentityAndZeroAndFailures) {
  auto g = std::make_shared<const Dgla>(f2(Q));
  EXPECT_NO_THROW(DglaMorphism::identity(g));
  auto ab = std::make_shared<const Dgla>(Dgla::abelian(Q, g->space()));
  // The identity into the abelian copy does not preserve [e,e] = f.
  auto r = DglaMorphism::check(*g, *ab, Matrix::identity(Q, 2));
  EXPECT_FALSE(r.find("bracket")->passed);
  EXPECT_THROW(DglaMorphism(g, ab, Matrix::identity(Q, 2)), StructureError);
  // Zero map is fine, and e -> f breaks the degree.
  EXPECT_NO_THROW(DglaMorphism(g, ab, Matrix(Q, 2, 2)));
  Matrix shift(Q, 2, 2);
  shift.set(1, 0, Scalar::one(Q));
  EXPECT_FALSE(DglaMorphism::check(*g, *ab, shift).find("degree")->passed);
}

TEST(PairDiagram, RejectsNegativeDegreesInM) {
  auto m = std::make_shared<const Dgla>(Dgla::abelian(Q, GradedSpace({{"m", -1}})));
  auto l = std::make_shared<const Dgla>(Dgla::abelian(Q, GradedSpace{}));
  DglaMorphism h(l, m, Matrix(Q, 1, 0));
  EXPECT_THROW(PairDiagram(h, h), StructureError);
}

TEST(DiagramMorphism, CommutativityMatchesConeMap) {
  // Diagrams 0 -> M <- M (identity g) with M = <m> in degree 1.
  auto zero = std::make_shared<const Dgla>(Dgla::abelian(Q, GradedSpace{}));
  auto m = std::make_shared<const Dgla>(Dgla::abelian(Q, GradedSpace({{"m", 1}})));
  PairDiagram d(DglaMorphism(zero, m, Matrix(Q, 1, 0)), DglaMorphism::identity(m));
  auto id = DiagramMorphism::identity(d);
  ChainMap c = induced_cone_map(id);
  EXPECT_EQ(c.matrix(), Matrix::identity(Q, 2));
  Matrix two = Matrix::identity(Q, 1).scaled(Scalar(Q, 2));
  EXPECT_THROW(DiagramMorphism(d, d, Matrix(Q, 0, 0), two, Matrix::identity(Q, 1)), StructureError);
  PairCone cone = d.cone();
  EXPECT_THROW(cone_morphism(cone, cone, Matrix(Q, 0, 0), Matrix::identity(Q, 1), two), StructureError);
  EXPECT_NO_THROW(DiagramMorphism(d, d, Matrix(Q, 0, 0), two, two));
  EXPECT_EQ(id.then(id).alpha_m(), Matrix::identity(Q, 1));
}

TEST(TensorWithIdeal, ResidueFieldGivesZero) {
  Dgla t = tensor_with_ideal(f2(Q), ArtinAlgebra::residue_field(Q));
  EXPECT_EQ(t.size(), 0u);
}

TEST(TensorWithIdeal, F2OverDualNumbersIsAbelian) {
  Dgla t = tensor_with_ideal(f2(Q), ArtinAlgebra::truncated_polynomial(Q, 1, "t"));
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t.space().label(0), "e⊗t");
  EXPECT_EQ(t.space().label(1), "f⊗t");
  EXPECT_TRUE(t.is_abelian());
  EXPECT_TRUE(validate_dgla(t).all_passed());
}

TEST(TensorWithIdeal, F2OverCubicTruncation) {
  auto a = ArtinAlgebra::truncated_polynomial(F5, 2, "t");
  Dgla t = tensor_with_ideal(f2(F5), a);
  ASSERT_EQ(t.size(), 4u);
  // [e⊗t, e⊗t] = f⊗t^2.
  EXPECT_EQ(t.basis_bracket(0, 0), vec(F5, {0, 0, 0, 1}));
  EXPECT_TRUE(t.basis_bracket(0, 1) == vec(F5, {0, 0, 0, 0}));
  EXPECT_TRUE(validate_dgla(t).all_passed());
}

TEST(TensorWithIdeal, NilpotentAndValidOnLieAlgebra) {
  // sl2-like degree-0 algebra [x,y] = z, [z,x] = 2x, [z,y] = -2y.
  GradedSpace s({{"x", 0}, {"y", 0}, {"z", 0}});
  Dgla g(Q, s, Matrix(Q, 3, 3),
         {{0, 1, vec(Q, {0, 0, 1})}, {2, 0, vec(Q, {2, 0, 0})}, {2, 1, vec(Q, {0, -2, 0})}});
  ASSERT_TRUE(validate_dgla(g).all_passed());
  auto a = ArtinAlgebra::truncated_polynomial(Q, 3, "t");
  Dgla t = tensor_with_ideal(g, a);
  EXPECT_TRUE(validate_dgla(t).all_passed());
  // Brackets of length >= nilpotency index vanish.
  Vec x = unit_vec(Q, t.size(), 0), y = unit_vec(Q, t.size(), 3);
  Vec w = t.bracket(x, t.bracket(y, t.bracket(x, y)));
  EXPECT_TRUE(is_zero(w));
  EXPECT_FALSE(is_zero(t.bracket(y, t.bracket(x, y))));
}
