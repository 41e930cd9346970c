#include "dtloc/bbsmooth.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <stdexcept>

#include "dtloc/errors.hpp"

namespace dtloc {

LinearProjectiveAction LinearProjectiveAction::operator-() const {
  LinearProjectiveAction out = *this;
  for (auto &f : out.factors)
    for (auto &w : f)
      w = -w;
  return out;
}

std::size_t LinearProjectiveAction::dimension() const {
  std::size_t d = 0;
  for (const auto &f : factors)
    d += f.empty() ? 0 : f.size() - 1;
  return d;
}

LinearProjectiveAction parse_factors(std::string_view text) {
  LinearProjectiveAction a;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view factor = text.substr(start, end - start);
    std::vector<std::int64_t> weights;
    std::size_t fs = 0;
    while (fs <= factor.size()) {
      std::size_t fe = factor.find(',', fs);
      if (fe == std::string_view::npos)
        fe = factor.size();
      std::string_view field = factor.substr(fs, fe - fs);
      while (!field.empty() && field.front() == ' ')
        field.remove_prefix(1);
      while (!field.empty() && field.back() == ' ')
        field.remove_suffix(1);
      std::int64_t w = 0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), w);
      if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
        throw std::invalid_argument("malformed weight '" + std::string(field) + "' in factors");
      weights.push_back(w);
      fs = fe + 1;
    }
    a.factors.push_back(std::move(weights));
    start = end + 1;
  }
  return a;
}

std::string BBCell::label() const {
  std::string out = "(";
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (i)
      out += ",";
    out += "e" + std::to_string(axes[i]);
  }
  return out + ")";
}

std::vector<BBCell> bb_cells(const LinearProjectiveAction &a) {
  for (std::size_t f = 0; f < a.factors.size(); ++f) {
    std::set<std::int64_t> seen(a.factors[f].begin(), a.factors[f].end());
    if (a.factors[f].empty())
      throw DomainError("factor " + std::to_string(f) + " has no coordinates");
    if (seen.size() != a.factors[f].size())
      throw DomainError("repeated weight within factor " + std::to_string(f) + "; fixed points are not isolated");
  }
  std::vector<BBCell> cells{BBCell{}};
  for (const auto &weights : a.factors) {
    std::vector<BBCell> next;
    for (const auto &cell : cells)
      for (std::size_t i = 0; i < weights.size(); ++i) {
        BBCell c = cell;
        c.axes.push_back(static_cast<int>(i));
        // Tangent coordinate x_j/x_i has weight w_j - w_i.
        for (std::size_t j = 0; j < weights.size(); ++j) {
          if (j == i)
            continue;
          if (weights[j] > weights[i])
            ++c.d_plus;
          else
            ++c.d_minus;
        }
        next.push_back(std::move(c));
      }
    cells = std::move(next);
  }
  return cells;
}

Eq1Check verify_eq1(const LinearProjectiveAction &a) {
  Eq1Check out;
  out.lhs = HalfLaurent::constant(1);
  for (const auto &f : a.factors) {
    HalfLaurent projective_space;
    for (std::size_t k = 0; k < f.size(); ++k)
      projective_space.add_term(2 * static_cast<std::int64_t>(k), 1);
    out.lhs *= projective_space;
  }
  for (const auto &c : bb_cells(a))
    out.rhs.add_term(2 * static_cast<std::int64_t>(c.d_plus), 1);
  out.equal = out.lhs == out.rhs;
  return out;
}

bool verify_duality(const LinearProjectiveAction &a) {
  const auto forward = bb_cells(a);
  const auto backward = bb_cells(-a);
  if (forward.size() != backward.size())
    return false;
  for (std::size_t i = 0; i < forward.size(); ++i)
    if (forward[i].axes != backward[i].axes || forward[i].d_plus != backward[i].d_minus ||
        forward[i].d_minus != backward[i].d_plus)
      return false;
  // Normalized classes sum_p y^{d_plus - d_minus} of a and -a are exchanged
  // by y -> 1/y.
  HalfLaurent virt_forward;
  HalfLaurent virt_backward;
  for (const auto &c : forward)
    virt_forward.add_term(c.d_plus - c.d_minus, 1);
  for (const auto &c : backward)
    virt_backward.add_term(c.d_plus - c.d_minus, 1);
  return virt_forward.invert_y() == virt_backward && verify_eq1(a).equal && verify_eq1(-a).equal;
}

} // namespace dtloc
