#pragma once

// Torus-fixed points of framed moduli as molten crystals: order ideals in the
// poset of path monomials modulo the potential relations.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dtloc/quiver.hpp"

namespace dtloc {

/// Binomial relation lhs = rhs coming from the cyclic derivative of the
/// potential with respect to `arrow`. Both sides are paths from the target of
/// `arrow` to its source.
struct Relation {
  int arrow = 0;
  std::vector<int> lhs;
  std::vector<int> rhs;
};

/// Cyclic derivatives of the potential as binomial relations. Arrows absent
/// from the potential contribute nothing. Throws DomainError for relations
/// that are not binomial or whose two sides have different lengths.
std::vector<Relation> binomial_relations(const Quiver &q);

struct Atom {
  int id = 0;
  int vertex = 0;
  /// Index into Quiver::framings of the framing vector this path starts at.
  int root = 0;
  /// Shortest path length from the framing atom.
  int depth = 0;
  /// Pairing of the path with each slope-lattice basis vector.
  std::vector<std::int64_t> weight;
  /// Arrow multiplicities of a representative path.
  std::vector<int> arrow_counts;
  /// Representative path (arrow indices).
  std::vector<int> word;
};

class AtomPoset {
public:
  static constexpr int kNone = -1;

  const Quiver &quiver() const { return quiver_; }
  const std::vector<Slope> &lattice_basis() const { return basis_; }
  const std::vector<Atom> &atoms() const { return atoms_; }
  const Atom &atom(int id) const { return atoms_.at(id); }
  int depth_bound() const { return depth_bound_; }

  /// Atom reached from `from` along `arrow`, or kNone when the arrow does not
  /// start at the atom's vertex or the result lies past the depth bound.
  int successor(int from, int arrow) const { return successors_[from * arrow_count_ + arrow]; }
  /// (atom, arrow) pairs stepping into `id`.
  const std::vector<std::pair<int, int>> &predecessors(int id) const { return predecessors_.at(id); }

  /// Normal form of a path word from the framing vector `root`; nullopt when
  /// the word is not a path or exceeds the depth bound.
  std::optional<int> atom_of(int root, const std::vector<int> &word) const;

  /// Per-depth atom counts, index = depth.
  std::vector<std::size_t> depth_counts() const;

  /// Renders the representative path of an atom ("1" for a framing atom).
  std::string render_atom(int id) const;

  /// Slope weight of an atom (pairing of its path with `s`).
  std::int64_t weight(int id, const Slope &s) const;

private:
  friend AtomPoset build_atom_poset(const Quiver &q, int depth_bound);

  Quiver quiver_;
  std::vector<Slope> basis_;
  std::vector<Atom> atoms_;
  std::size_t arrow_count_ = 0;
  std::vector<int> successors_;
  std::vector<std::vector<std::pair<int, int>>> predecessors_;
  int depth_bound_ = 0;
};

/// All atoms of depth <= depth_bound. Two path words are the same atom iff
/// they are connected by rewrites along the potential relations. Throws
/// DomainError("non-confluent relations at depth d ...") when two distinct
/// atoms at one depth share framing, vertex and full-torus weight.
AtomPoset build_atom_poset(const Quiver &q, int depth_bound);

/// A finite order ideal of the atom poset: sorted atom ids.
struct MoltenCrystal {
  std::vector<int> atoms;

  std::size_t size() const { return atoms.size(); }
  bool contains(int id) const;

  friend bool operator==(const MoltenCrystal &, const MoltenCrystal &) = default;
};

/// True iff every predecessor of every atom of `c` lies in `c` and the atoms
/// are distinct.
bool is_order_ideal(const AtomPoset &p, const MoltenCrystal &c);

/// All order ideals with at most max_size atoms, each once, sorted by size,
/// then by the sorted list of atom weight vectors, then by atom ids. Throws
/// DomainError when the poset depth cannot support max_size.
std::vector<MoltenCrystal> enumerate_crystals(const AtomPoset &p, int max_size, int threads = 1);

/// (vertex, slope weight) for each atom of the crystal, in atom order.
std::vector<std::pair<int, std::int64_t>> crystal_weights(const AtomPoset &p, const MoltenCrystal &c,
                                                          const Slope &s);

} // namespace dtloc
