#pragma once

#include <stdexcept>

#include "dgdef/bicomplex.hpp"
#include "dgdef/obstruction.hpp"
#include "fixtures.hpp"

namespace models {

using namespace dgdef;
using fixtures::share;
using fixtures::vec;

inline Vec unit(Field f, std::size_t n, std::size_t i) { return unit_vec(f, n, i); }

/// Λ(dz, dz̄) with ∂ = ∂̄ = 0.
inline BigradedAlgebra dz_model(Field f) {
  return exterior_model(f, {{"dz", {1, 0}}, {"dz̄", {0, 1}}}, "Λ(dz,dz̄)");
}

/// u, a = ∂u, b = ∂̄u, c = ∂∂̄u in a square-zero model. With `broken` the
/// sign of ∂̄a is flipped so that ∂∂̄u ≠ −∂̄∂u.
inline BigradedAlgebra square_model(Field f, bool broken = false) {
  Matrix del(f, 4, 4), delbar(f, 4, 4);
  del.set(1, 0, Scalar::one(f));
  del.set(3, 2, Scalar::one(f));
  delbar.set(2, 0, Scalar::one(f));
  delbar.set(3, 1, Scalar(f, broken ? 1 : -1));
  return BigradedAlgebra::square_zero(f, {{"u", {0, 0}}, {"a", {1, 0}}, {"b", {0, 1}}, {"c", {1, 1}}}, del, delbar,
                                      broken ? "square-mutant" : "square");
}

/// 1, x (1,0), y (0,1), z (1,1) with ∂y = z, ∂̄x = z: z is ∂- and ∂̄-exact
/// but not ∂∂̄-exact.
inline BigradedAlgebra zigzag_model(Field f) {
  Matrix del(f, 3, 3), delbar(f, 3, 3);
  del.set(2, 1, Scalar::one(f));
  delbar.set(2, 0, Scalar::one(f));
  return BigradedAlgebra::square_zero(f, {{"x", {1, 0}}, {"y", {0, 1}}, {"z", {1, 1}}}, del, delbar, "zigzag");
}

/// 1, z, dz, dz̄ with ∂z = dz, ∂̄z = dz̄ and all products of non-units zero.
inline BigradedAlgebra line_model(Field f) {
  Matrix del(f, 3, 3), delbar(f, 3, 3);
  del.set(1, 0, Scalar::one(f));
  delbar.set(2, 0, Scalar::one(f));
  return BigradedAlgebra::square_zero(f, {{"z", {0, 0}}, {"dz", {1, 0}}, {"dz̄", {0, 1}}}, del, delbar, "line");
}

/// Derivations v = ∂_z, w = z∂_z (degree 0) and u = dz̄∂_z (degree 1) of the
/// line model acting by contraction: dw = −u, [v,w] = v, [w,u] = −u.
inline ContractionAction line_action(Field f) {
  Matrix d(f, 3, 3);
  d.set(2, 1, Scalar(f, -1));
  auto l = share(Dgla(f, GradedSpace({{"v", 0}, {"w", 0}, {"u", 1}}), d,
                      {{0, 1, vec(f, {1, 0, 0})}, {1, 2, vec(f, {0, 0, -1})}}, "inner"));
  ContractionAction ca{l, {Matrix(f, 4, 4), Matrix(f, 4, 4), Matrix(f, 4, 4)}};
  ca.operators[0].set(0, 2, Scalar::one(f));  // dz ↦ 1
  ca.operators[1].set(1, 2, Scalar::one(f));  // dz ↦ z
  ca.operators[2].set(3, 2, Scalar::one(f));  // dz ↦ dz̄
  return ca;
}

/// Λ(t) with t of bidegree (1,0).
inline BigradedAlgebra line_form(Field f, const std::string& t) { return exterior_model(f, {{t, {1, 0}}}, "Λ(" + t + ")"); }

/// Z = Λ(a) ⊗ Λ(b) with the diagonal ideal (a − b, ab).
inline ModelConfiguration graph_configuration(Field f) {
  ProductModel z = tensor_model(line_form(f, "a"), line_form(f, "b"));
  const std::size_t n = z.algebra.size();
  auto idx = [&](const std::string& label) {
    for (std::size_t i = 0; i < n; ++i)
      if (z.algebra.label(i) == label) return i;
    throw std::logic_error("graph_configuration: no basis element " + label);
  };
  Vec diff = unit(f, n, idx("a"));
  diff[idx("b")] = Scalar(f, -1);
  ModelConfiguration mc;
  mc.ambient = z.algebra;
  mc.ideal = {diff, unit(f, n, idx("a⊗b"))};
  for (std::size_t c = 0; c < z.q_star.cols(); ++c) mc.y_pullback.push_back(z.q_star.column(c));
  for (std::size_t c = 0; c < z.p_star.cols(); ++c) mc.x_pullback.push_back(z.p_star.column(c));
  return mc;
}

/// Z = S ⊗ S for the square model S, with the kernel of multiplication.
inline ModelConfiguration square_diagonal(Field f) {
  BigradedAlgebra s = square_model(f);
  ProductModel z = tensor_model(s, s);
  const std::size_t n = z.algebra.size(), k = s.size();
  Matrix mult(f, k, n);
  // Basis of the tensor model is i*k + j ↦ s_i ⊗ s_j.
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const Vec& v = s.basis_product(i, j);
      for (std::size_t r = 0; r < k; ++r) mult.set(r, i * k + j, v[r]);
    }
  ModelConfiguration mc;
  mc.ambient = z.algebra;
  mc.ideal = kernel_basis(mult);
  for (std::size_t c = 0; c < z.q_star.cols(); ++c) mc.y_pullback.push_back(z.q_star.column(c));
  for (std::size_t c = 0; c < z.p_star.cols(); ++c) mc.x_pullback.push_back(z.p_star.column(c));
  return mc;
}

/// The annihilation fixture. A_Z = Λ(dx, dx̄, dy1, dy2) with ∂ = ∂̄ = 0 is
/// the product of X = Λ(dx, dx̄) and Y = Λ(dy1, dy2); Γ is the graph of
/// y1 = x, y2 = 0, so I_Γ is the kernel of dx, dx̄, dy1, dy2 ↦ dx, dx̄, dx, 0.
/// M has the constant fields ∂x, ∂y1, ∂y2 in degree 0, dx̄∂x, dx̄∂y1,
/// dx̄∂y2 in degree 1 and a copy e, f of F2 acting trivially.
struct AnnihilationFixture {
  ModelConfiguration configuration;
  ContractionAction action;
  BigradedAlgebra x_model;
  Matrix restriction;  // A_Z -> A_X
  Vec omega;           // dy1∧dy2
};

inline AnnihilationFixture annihilation_fixture(Field f) {
  AnnihilationFixture out;
  BigradedAlgebra z = exterior_model(f, {{"dx", {1, 0}}, {"dx̄", {0, 1}}, {"dy1", {1, 0}}, {"dy2", {1, 0}}}, "Λ(dx,dx̄,dy1,dy2)");
  BigradedAlgebra x = exterior_model(f, {{"dx", {1, 0}}, {"dx̄", {0, 1}}}, "Λ(dx,dx̄)");
  BigradedAlgebra y = exterior_model(f, {{"dy1", {1, 0}}, {"dy2", {1, 0}}}, "Λ(dy1,dy2)");
  const std::size_t n = z.size();
  auto gen = [&](std::size_t i) { return unit(f, n, std::size_t{1} << i); };
  std::vector<Vec> rho = {unit(f, 4, 1), unit(f, 4, 2), unit(f, 4, 1), zero_vec(f, 4)};
  out.restriction = exterior_map(z, x, rho);
  std::vector<Vec> p_images = {gen(0), gen(1)}, q_images = {gen(2), gen(3)};
  const Matrix p_star = exterior_map(x, z, p_images), q_star = exterior_map(y, z, q_images);
  out.configuration.ambient = z;
  out.configuration.ideal = kernel_basis(out.restriction);
  for (std::size_t c = 0; c < 4; ++c) {
    out.configuration.x_pullback.push_back(p_star.column(c));
    out.configuration.y_pullback.push_back(q_star.column(c));
  }
  auto m = share(Dgla(f,
                      GradedSpace({{"∂x", 0}, {"∂y1", 0}, {"∂y2", 0}, {"dx̄∂x", 1}, {"dx̄∂y1", 1}, {"dx̄∂y2", 1},
                                   {"e", 1}, {"f", 2}}),
                      Matrix(f, 8, 8), {{6, 6, unit(f, 8, 7)}}, "fields⊕F2"));
  out.action.algebra = m;
  const Matrix wedge_bar = left_multiplication(z, gen(1));
  for (std::size_t g : {0, 2, 3}) out.action.operators.push_back(generator_contraction(z, g));
  for (std::size_t g : {0, 2, 3}) out.action.operators.push_back(wedge_bar * generator_contraction(z, g));
  out.action.operators.push_back(Matrix(f, n, n));
  out.action.operators.push_back(Matrix(f, n, n));
  out.x_model = x;
  out.omega = unit(f, n, 0b1100);
  return out;
}

/// Coordinates of v ∈ M in the basis of a sub-DGLA.
inline Vec sub_coords(const SubDgla& s, const Vec& v) {
  std::vector<Vec> cols;
  for (std::size_t c = 0; c < s.inclusion.cols(); ++c) cols.push_back(s.inclusion.column(c));
  auto c = SubspaceCoords(v.empty() ? Field::rationals() : v[0].field(), s.inclusion.rows(), cols).coords(v);
  if (!c) throw std::logic_error("sub_coords: element outside the subalgebra");
  return *c;
}

/// a ⊗ μ in V ⊗ m_A with dim m_A = k: coordinate i*k + slot.
inline Vec tensor_slot(const Vec& a, std::size_t k, std::size_t slot) {
  Vec out = zero_vec(a.empty() ? Field::rationals() : a[0].field(), a.size() * k);
  for (std::size_t i = 0; i < a.size(); ++i) out[i * k + slot] = a[i];
  return out;
}

}  // namespace models
