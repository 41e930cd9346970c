#pragma once

// Smooth Bialynicki-Birula check on products of projective spaces with linear
// C*-actions.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dtloc/half_laurent.hpp"

namespace dtloc {

/// One weight vector per projective factor; entry i is the weight of
/// homogeneous coordinate i. Weights within a factor must be distinct.
struct LinearProjectiveAction {
  std::vector<std::vector<std::int64_t>> factors;

  LinearProjectiveAction operator-() const;
  std::size_t dimension() const;
};

/// Parses "0,1,2;0,1". Throws std::invalid_argument when malformed.
LinearProjectiveAction parse_factors(std::string_view text);

struct BBCell {
  /// Coordinate axis chosen in each factor.
  std::vector<int> axes;
  int d_plus = 0;
  int d_minus = 0;

  std::string label() const;
};

/// Fixed points and the dimensions of their attracting / repelling cells, in
/// lexicographic order of the axis tuples. Throws DomainError on a repeated
/// weight within a factor.
std::vector<BBCell> bb_cells(const LinearProjectiveAction &a);

struct Eq1Check {
  /// Known class of the product: prod_f (1 + y^2 + ... + y^{2 dim f}).
  HalfLaurent lhs;
  /// Cell decomposition: sum over fixed points of y^{2 d_plus}.
  HalfLaurent rhs;
  bool equal = false;
};

Eq1Check verify_eq1(const LinearProjectiveAction &a);

/// Negating the action swaps d_plus and d_minus at every fixed point and keeps
/// the cell decomposition equal to the class.
bool verify_duality(const LinearProjectiveAction &a);

} // namespace dtloc
