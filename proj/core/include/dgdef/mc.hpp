#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dgdef/dgla.hpp"

namespace dgdef {

/// dx + ½[x,x] for x of degree 1.
Vec mc_residual(const Dgla& g, std::span<const Scalar> x);

/// e^a * x = x + Σ_{n≥0} ad_a^n/(n+1)! ([a,x] − da) for nilpotent a of
/// degree 0 and x of degree 1; the series stops at the first vanishing term.
Vec gauge_act(const Dgla& g, std::span<const Scalar> a, std::span<const Scalar> x);

/// log(e^p e^q) by the Dynkin series on right-nested brackets, truncated
/// once every word of some length vanishes.
Vec bch(const Dgla& g, std::span<const Scalar> p, std::span<const Scalar> q);

/// A pair diagram with every algebra tensored by m_A.
class TensoredPair {
public:
  TensoredPair() = default;
  /// Throws std::domain_error when the characteristic is below the
  /// nilpotency index of A.
  TensoredPair(PairDiagram diagram, ArtinAlgebra algebra);

  const PairDiagram& diagram() const { return diagram_; }
  const ArtinAlgebra& algebra() const { return algebra_; }
  Field field() const { return algebra_.field(); }
  const Dgla& l() const { return l_; }
  const Dgla& m() const { return m_; }
  const Dgla& n() const { return n_; }
  const Matrix& h() const { return h_; }
  const Matrix& g() const { return g_; }

private:
  PairDiagram diagram_;
  ArtinAlgebra algebra_;
  Dgla l_, m_, n_;
  Matrix h_, g_;
};

/// (x, y, p) with x ∈ L¹⊗m_A, y ∈ N¹⊗m_A, p ∈ M⁰⊗m_A the logarithm of e^p.
/// Vectors are full coordinate vectors of the tensored algebras.
struct McTriple {
  Vec x, y, p;
  friend bool operator==(const McTriple&, const McTriple&) = default;
};

/// (a, b) with a ∈ L⁰⊗m_A and b ∈ N⁰⊗m_A.
struct GaugePair {
  Vec a, b;
  friend bool operator==(const GaugePair&, const GaugePair&) = default;
};

McTriple zero_triple(const TensoredPair& t);
GaugePair zero_gauge(const TensoredPair& t);

/// Checks "degrees", "mc(x)", "mc(y)" and "g(y)=e^p*h(x)".
CheckList mc_triple_valid(const McTriple& xi, const TensoredPair& t);

/// (e^a*x, e^b*y, e^{g(b)} e^p e^{−h(a)}).
McTriple gauge_act_pair(const GaugePair& gp, const McTriple& xi, const TensoredPair& t);

/// Pair (a,b) composed as e^{a1}e^{a2}: acting by the result equals acting
/// by `second` and then by `first`.
GaugePair compose(const GaugePair& first, const GaugePair& second, const TensoredPair& t);

struct GaugeSearchOptions {
  /// Cap on kernel directions explored per stage over a finite field.
  std::uint64_t max_branches = 100000;
};

/// Gauge pair carrying ξ₁ to ξ₂, solved along m_A ⊇ m_A² ⊇ …; each stage is
/// a linear solve for the correction modulo the next power. Over F_p the
/// kernel of each stage is searched; over Q only the particular solution is
/// followed.
std::optional<GaugePair> gauge_equivalent(const McTriple& xi1, const McTriple& xi2, const TensoredPair& t,
                                          const GaugeSearchOptions& opts = {});

/// Coordinates (indices into the tensored algebra) of a given degree.
const std::vector<std::size_t>& degree_indices(const Dgla& g, int degree);

/// Calls `visit` on every vector supported on `support` with coefficients in
/// F_p (p^|support| vectors). Throws std::length_error above `limit`.
void for_each_vector(Field f, std::size_t size, const std::vector<std::size_t>& support,
                     const std::function<void(const Vec&)>& visit, std::uint64_t limit = 1000000);

/// Every MC triple over a prime field, by exhaustive search.
std::vector<McTriple> enumerate_mc_triples(const TensoredPair& t, std::uint64_t limit = 1000000);

/// Every gauge pair over a prime field.
std::vector<GaugePair> enumerate_gauge_pairs(const TensoredPair& t, std::uint64_t limit = 1000000);

/// exp(e_i) for the basis vectors e_i of (L⁰ ⊕ N⁰) ⊗ m_A. They generate the
/// gauge group, which is a finite p-group whose Frattini quotient they span.
std::vector<GaugePair> gauge_generators(const TensoredPair& t);

/// Orbit labels: result[i] is the least index j with triples[j] ~ triples[i].
/// Follows the action of gauge_generators only.
std::vector<std::size_t> orbit_partition(const std::vector<McTriple>& triples, const TensoredPair& t);

/// Same labels from the action of every gauge pair.
std::vector<std::size_t> orbit_partition_bruteforce(const std::vector<McTriple>& triples, const TensoredPair& t,
                                                    std::uint64_t limit = 1000000);

}  // namespace dgdef
