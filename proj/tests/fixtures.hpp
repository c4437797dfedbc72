#pragma once

#include <initializer_list>
#include <memory>
#include <random>

#include "dgdef/dgla.hpp"

namespace fixtures {

using namespace dgdef;

inline Vec vec(Field f, std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.emplace_back(f, x);
  return v;
}

inline DglaPtr share(Dgla g) { return std::make_shared<const Dgla>(std::move(g)); }

/// e in degree 1, f in degree 2, d = 0, [e,e] = f.
inline Dgla f2(Field f) {
  return Dgla(f, GradedSpace({{"e", 1}, {"f", 2}}), Matrix(f, 2, 2), {{0, 0, vec(f, {0, 1})}}, "F2");
}

/// a (0), u (1), v (1), w (2): d a = u, d v = w, [a,u] = v, [u,u] = w.
/// Maurer–Cartan elements x = αu + βv satisfy β + ½α² = 0.
inline Dgla heis(Field f) {
  GradedSpace s({{"a", 0}, {"u", 1}, {"v", 1}, {"w", 2}});
  Matrix d(f, 4, 4);
  d.set(1, 0, Scalar::one(f));
  d.set(3, 2, Scalar::one(f));
  return Dgla(f, s, d, {{0, 1, vec(f, {0, 0, 1, 0})}, {1, 1, vec(f, {0, 0, 0, 1})}}, "heis");
}

/// gl2 in degree 0 acting on a copy of itself in degree 1 by the adjoint
/// representation; d = 0 and [L¹, L¹] = 0.
inline Dgla gl2_semidirect(Field f) {
  std::vector<std::pair<std::string, int>> basis;
  const char* names[] = {"E11", "E12", "E21", "E22"};
  for (int deg = 0; deg <= 1; ++deg)
    for (const char* n : names) basis.emplace_back(std::string(n) + (deg ? "'" : ""), deg);
  std::vector<BracketEntry> entries;
  auto idx = [](int i, int j) { return static_cast<std::size_t>(2 * i + j); };
  // [E_ij, E_kl] = δ_jk E_il − δ_li E_kj
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          if (idx(i, j) > idx(k, l)) continue;
          Vec v0 = zero_vec(f, 8), v1 = zero_vec(f, 8);
          if (j == k) {
            v0[idx(i, l)] = v0[idx(i, l)] + Scalar::one(f);
            v1[4 + idx(i, l)] = v1[4 + idx(i, l)] + Scalar::one(f);
          }
          if (l == i) {
            v0[idx(k, j)] = v0[idx(k, j)] - Scalar::one(f);
            v1[4 + idx(k, j)] = v1[4 + idx(k, j)] - Scalar::one(f);
          }
          if (!is_zero(v0)) entries.push_back({idx(i, j), idx(k, l), v0});
          if (!is_zero(v1)) {
            entries.push_back({idx(i, j), 4 + idx(k, l), v1});
            if (idx(i, j) != idx(k, l)) {
              // [E_kl, E_ij'] = −[E_ij, E_kl]'
              entries.push_back({idx(k, l), 4 + idx(i, j), scale(Scalar(f, -1), v1)});
            }
          }
        }
  return Dgla(f, GradedSpace(basis), Matrix(f, 8, 8), entries, "gl2⋉gl2");
}

/// Pair with every algebra equal to g and h = g = identity.
inline PairDiagram identity_pair(const DglaPtr& g) {
  return PairDiagram(DglaMorphism::identity(g), DglaMorphism::identity(g));
}

/// L = F2, N = 0, M = F2, h = g = 0.
inline PairDiagram f2_pair(Field f) {
  auto l = share(f2(f));
  auto n = share(Dgla::abelian(f, GradedSpace{}));
  return PairDiagram(DglaMorphism(l, l, Matrix(f, 2, 2)), DglaMorphism(n, l, Matrix(f, 2, 0)));
}

/// Random Vec supported on the given indices.
inline Vec random_on(std::mt19937& rng, Field f, std::size_t n, const std::vector<std::size_t>& support) {
  Vec v = zero_vec(f, n);
  std::uniform_int_distribution<long> c(-3, 3);
  for (std::size_t i : support) v[i] = f.is_rational() ? Scalar(f, c(rng)) : Scalar(f, static_cast<long>(rng() % f.characteristic()));
  return v;
}

}  // namespace fixtures
