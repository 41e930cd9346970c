#pragma once

// Framed quivers with potential: data model, text format, slopes and cycles.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dtloc {

struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;

  friend bool operator==(const Arrow &, const Arrow &) = default;
};

/// Signed cyclic word of arrow indices. The word is a closed path read left to
/// right: the target of each arrow is the source of the next, cyclically.
struct PotentialTerm {
  int sign = 1;
  std::vector<int> word;

  friend bool operator==(const PotentialTerm &, const PotentialTerm &) = default;
};

/// A quiver with potential and one rank-1 framing vector at each framed vertex.
class Quiver {
public:
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<PotentialTerm> potential;
  std::vector<int> framings;
  /// Quality warnings collected while parsing (never part of equality).
  std::vector<std::string> warnings;

  std::optional<int> vertex_index(std::string_view name) const;
  std::optional<int> arrow_index(std::string_view name) const;
  std::size_t arrow_count() const { return arrows.size(); }

  std::string render_word(const std::vector<int> &word, std::string_view sep = " ") const;

  friend bool operator==(const Quiver &a, const Quiver &b) {
    return a.vertices == b.vertices && a.arrows == b.arrows && a.potential == b.potential &&
           a.framings == b.framings;
  }
};

/// Parses the line-oriented quiver description format:
///
///   vertex <id>
///   arrow <name> <src> <dst> ;
///   potential +|- <arrow> <arrow> ... ;
///   framing <vertex>
///
/// `#` starts a comment. Throws ParseError with line and column.
Quiver parse_quiver(std::string_view text);

/// Canonical document for `q`; parse_quiver(serialize_quiver(q)) == q.
std::string serialize_quiver(const Quiver &q);

/// Built-in model documents: "c3", "conifold", "loop".
std::optional<std::string_view> builtin_document(std::string_view name);
std::vector<std::string> builtin_names();
Quiver builtin_quiver(std::string_view name);

/// Disjoint union; names of the two sides get the given prefixes.
Quiver disjoint_union(const Quiver &a, const Quiver &b, std::string_view prefix_a = "l_",
                      std::string_view prefix_b = "r_");

/// Integer C*-weight per arrow, in arrow declaration order.
struct Slope {
  std::vector<std::int64_t> weights;

  std::int64_t weight_of(const std::vector<int> &word) const;
  bool is_zero() const;
  Slope operator-() const;
  std::string render() const;

  friend bool operator==(const Slope &, const Slope &) = default;
};

/// Builds a slope from a name -> weight map; throws DomainError naming the
/// first arrow without a weight or any unknown arrow name.
Slope make_slope(const Quiver &q, const std::map<std::string, std::int64_t> &weights);

/// Parses "1,1,-2" in arrow order. Throws std::invalid_argument on malformed
/// input or arity mismatch.
Slope parse_slope(const Quiver &q, std::string_view text);

Slope concat_slopes(const Slope &a, const Slope &b);

/// Indices of potential terms with nonzero total weight. Throws DomainError if
/// `s` does not carry exactly one weight per arrow.
std::vector<std::size_t> validate_slope(const Quiver &q, const Slope &s);

/// Basis of the lattice of slopes annihilating every potential term.
std::vector<Slope> slope_lattice_basis(const Quiver &q);

/// Elementary (vertex-simple) cycle, stored as its lexicographically least
/// rotation by arrow name.
struct CycleFunctional {
  std::vector<int> cycle;

  std::int64_t weight_of(const Slope &s) const { return s.weight_of(cycle); }

  friend bool operator==(const CycleFunctional &, const CycleFunctional &) = default;
};

/// All simple closed paths of length <= max_len, deduplicated up to rotation,
/// ordered by length then by arrow names.
std::vector<CycleFunctional> elementary_cycles(const Quiver &q, int max_len);

/// Default cycle bound: twice the longest potential term (at least 1).
int default_cycle_bound(const Quiver &q);

} // namespace dtloc
