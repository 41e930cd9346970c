#pragma once

// Torus weights of the four-term tangent-obstruction complex at a molten
// crystal, and the signed contracting-weight index.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dtloc/crystal.hpp"
#include "dtloc/quiver.hpp"

namespace dtloc {

/// Weight bookkeeping of the complex
///
///   End(V) -> Arrows(V) + Hom(C, V_f) -> Relations(V) + Hom(V_f, C) -> End(V)^*
///
/// in homological degrees 0..3. The net multiplicity of a weight w is
/// m1(w) + m3(w) - m0(w) - m2(w). Because the complex is self-dual,
/// net(-w) = -net(w): `d_plus` sums net over w > 0, `d_minus` over w < 0, and
/// d_minus = -d_plus. The index is the signed count of contracting weights of
/// the tangent half, ind = d_plus = (d_plus - d_minus) / 2.
///
/// d_zero vanishes identically by self-duality, so isolation is decided by
/// `zero_tangent`, the dimension of the weight-0 part of the first cohomology
/// ker d1 / im d0, computed from the fixed representation itself.
struct IndexReport {
  std::array<std::vector<std::int64_t>, 4> deg_weights; // each sorted ascending
  std::int64_t d_plus = 0;
  std::int64_t d_zero = 0;
  std::int64_t d_minus = 0;
  std::int64_t ind = 0;
  std::int64_t zero_tangent = 0;

  bool isolated() const { return d_zero == 0 && zero_tangent == 0; }

  /// Nonzero net multiplicities by weight.
  std::map<std::int64_t, std::int64_t> net() const;
};

/// Per-slope precomputation shared across fixed points of one poset.
class TangentComplex {
public:
  TangentComplex(const AtomPoset &p, const Slope &s);

  /// Weights and net counts; never throws on a non-isolated fixed point.
  IndexReport report(const MoltenCrystal &c) const;

private:
  const AtomPoset *poset_;
  Slope slope_;
  std::vector<std::int64_t> atom_weight_;
  std::vector<std::int64_t> relation_weight_;
  std::vector<Relation> relations_;

  std::int64_t zero_tangent(const MoltenCrystal &c, const std::vector<std::vector<int>> &at_vertex) const;
};

/// Throws DomainError("fixed point not isolated ...") unless isolated().
IndexReport tangent_complex_weights(const AtomPoset &p, const MoltenCrystal &c, const Slope &s);

/// First elementary cycle of length <= max_len with zero weight, if any.
std::optional<CycleFunctional> zero_weight_cycle(const Quiver &q, const Slope &s, int max_len);

/// True iff `s` is nonzero, no elementary cycle of length <= 2*max_size has
/// weight 0, and every fixed point with at most max_size atoms is isolated.
bool is_generic(const Quiver &q, const Slope &s, int max_size, int threads = 1);

/// Same check on an already enumerated set of fixed points.
bool is_generic(const AtomPoset &p, const std::vector<MoltenCrystal> &crystals, const Slope &s,
                int max_size);

} // namespace dtloc
