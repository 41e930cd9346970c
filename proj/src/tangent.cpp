#include "dtloc/tangent.hpp"

#include <algorithm>
#include <gmpxx.h>

#include "dtloc/errors.hpp"

namespace dtloc {

std::map<std::int64_t, std::int64_t> IndexReport::net() const {
  std::map<std::int64_t, std::int64_t> out;
  static constexpr std::array<int, 4> kSign{-1, 1, -1, 1};
  for (int k = 0; k < 4; ++k)
    for (auto w : deg_weights[k])
      out[w] += kSign[k];
  std::erase_if(out, [](const auto &kv) { return kv.second == 0; });
  return out;
}

TangentComplex::TangentComplex(const AtomPoset &p, const Slope &s) : poset_(&p), slope_(s) {
  const Quiver &q = p.quiver();
  if (s.weights.size() != q.arrow_count())
    throw DomainError("slope arity does not match the quiver");
  atom_weight_.reserve(p.atoms().size());
  for (const auto &a : p.atoms())
    atom_weight_.push_back(p.weight(a.id, s));

  // The relation dual to arrow a carries the weight of the cyclic derivative
  // of the potential; without a potential term it is the symplectic dual -s(a).
  relation_weight_.resize(q.arrow_count());
  for (std::size_t a = 0; a < q.arrow_count(); ++a)
    relation_weight_[a] = -s.weights[a];
  relations_ = binomial_relations(q);
  for (const auto &r : relations_)
    relation_weight_[r.arrow] = s.weight_of(r.lhs);
}

namespace {

std::size_t rank_of(std::vector<std::vector<mpq_class>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0)
      ++pivot;
    if (pivot == rows.size())
      continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0)
        continue;
      const mpq_class f = rows[r][col] / rows[rank][col];
      for (std::size_t k = col; k < cols; ++k)
        rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

} // namespace

std::int64_t TangentComplex::zero_tangent(const MoltenCrystal &c,
                                          const std::vector<std::vector<int>> &at_vertex) const {
  const AtomPoset &p = *poset_;
  const Quiver &q = p.quiver();
  auto w = [&](int id) { return atom_weight_[id]; };
  auto step = [&](int from, int arrow) {
    const int to = p.successor(from, arrow);
    return to != AtomPoset::kNone && c.contains(to) ? to : AtomPoset::kNone;
  };

  // Weight-0 coordinates of degree 1: (arrow, a, b) sends e_a to e_b;
  // framings are keyed (-1 - f, root, b).
  using Key = std::array<int, 3>;
  std::map<Key, std::size_t> col;
  for (std::size_t arrow = 0; arrow < q.arrow_count(); ++arrow) {
    const Arrow &ar = q.arrows[arrow];
    for (int a : at_vertex[ar.source])
      for (int b : at_vertex[ar.target])
        if (w(a) + slope_.weights[arrow] - w(b) == 0)
          col.emplace(Key{static_cast<int>(arrow), a, b}, col.size());
  }
  for (std::size_t f = 0; f < q.framings.size(); ++f)
    for (int b : at_vertex[q.framings[f]])
      if (w(static_cast<int>(f)) - w(b) == 0 && c.contains(static_cast<int>(f)))
        col.emplace(Key{-1 - static_cast<int>(f), static_cast<int>(f), b}, col.size());
  if (col.empty())
    return 0;

  // d0: the infinitesimal gauge action of E_{ab} in End(V).
  std::vector<std::vector<mpq_class>> gauge;
  for (const auto &atoms : at_vertex)
    for (int a : atoms)
      for (int b : atoms) {
        if (w(a) != w(b))
          continue;
        std::vector<mpq_class> row(col.size());
        auto add = [&](const Key &k, int v) {
          if (auto it = col.find(k); it != col.end())
            row[it->second] += v;
        };
        const int vtx = p.atom(a).vertex;
        for (std::size_t arrow = 0; arrow < q.arrow_count(); ++arrow) {
          const Arrow &ar = q.arrows[arrow];
          if (ar.target == vtx)
            for (int from : at_vertex[ar.source])
              if (step(from, static_cast<int>(arrow)) == a)
                add({static_cast<int>(arrow), from, b}, 1);
          if (ar.source == vtx)
            if (int to = step(b, static_cast<int>(arrow)); to != AtomPoset::kNone)
              add({static_cast<int>(arrow), a, to}, -1);
        }
        for (std::size_t f = 0; f < q.framings.size(); ++f)
          if (a == static_cast<int>(f))
            add({-1 - static_cast<int>(f), a, b}, 1);
        gauge.push_back(std::move(row));
      }

  // d1: linearized relations, one row per output matrix entry.
  std::map<std::pair<std::size_t, Key>, std::vector<mpq_class>> lin;
  for (std::size_t ri = 0; ri < relations_.size(); ++ri) {
    const Relation &rel = relations_[ri];
    const int start_vertex = q.arrows[rel.arrow].target;
    for (int side = 0; side < 2; ++side) {
      const auto &word = side == 0 ? rel.lhs : rel.rhs;
      const int sign = side == 0 ? 1 : -1;
      for (int start : at_vertex[start_vertex])
        for (std::size_t k = 0; k < word.size(); ++k) {
          int at = start;
          for (std::size_t i = 0; i < k && at != AtomPoset::kNone; ++i)
            at = step(at, word[i]);
          if (at == AtomPoset::kNone)
            continue;
          for (const auto &[key, j] : col) {
            if (key[0] != word[k] || key[1] != at)
              continue;
            int end = key[2];
            for (std::size_t i = k + 1; i < word.size() && end != AtomPoset::kNone; ++i)
              end = step(end, word[i]);
            if (end == AtomPoset::kNone)
              continue;
            auto &row = lin[{ri, Key{start, end, 0}}];
            row.resize(col.size());
            row[j] += sign;
          }
        }
    }
  }
  std::vector<std::vector<mpq_class>> rel_rows;
  for (auto &[k, row] : lin)
    rel_rows.push_back(std::move(row));

  const auto kernel = static_cast<std::int64_t>(col.size() - rank_of(std::move(rel_rows)));
  return kernel - static_cast<std::int64_t>(rank_of(std::move(gauge)));
}

IndexReport TangentComplex::report(const MoltenCrystal &c) const {
  const AtomPoset &p = *poset_;
  const Quiver &q = p.quiver();
  std::vector<std::vector<int>> at_vertex(q.vertices.size());
  for (int id : c.atoms)
    at_vertex[p.atom(id).vertex].push_back(id);

  IndexReport r;
  auto &[deg0, deg1, deg2, deg3] = r.deg_weights;
  // A matrix entry sending atom a to atom b, scaled by weight `shift`, has
  // torus weight P(a) + shift - P(b).
  auto entry = [&](int a, std::int64_t shift, int b) { return atom_weight_[a] + shift - atom_weight_[b]; };

  for (const auto &atoms : at_vertex)
    for (int a : atoms)
      for (int b : atoms) {
        deg0.push_back(entry(a, 0, b));
        deg3.push_back(-entry(a, 0, b));
      }
  for (std::size_t arrow = 0; arrow < q.arrow_count(); ++arrow) {
    const Arrow &ar = q.arrows[arrow];
    for (int a : at_vertex[ar.source])
      for (int b : at_vertex[ar.target])
        deg1.push_back(entry(a, slope_.weights[arrow], b));
    for (int a : at_vertex[ar.target])
      for (int b : at_vertex[ar.source])
        deg2.push_back(entry(a, relation_weight_[arrow], b));
  }
  for (std::size_t f = 0; f < q.framings.size(); ++f) {
    const int root = static_cast<int>(f);
    for (int b : at_vertex[q.framings[f]]) {
      deg1.push_back(entry(root, 0, b));
      deg2.push_back(-entry(root, 0, b));
    }
  }
  for (auto &d : r.deg_weights)
    std::sort(d.begin(), d.end());

  for (const auto &[w, n] : r.net()) {
    if (w > 0)
      r.d_plus += n;
    else if (w < 0)
      r.d_minus += n;
    else
      r.d_zero += n;
  }
  r.ind = r.d_plus;
  r.zero_tangent = zero_tangent(c, at_vertex);
  return r;
}

IndexReport tangent_complex_weights(const AtomPoset &p, const MoltenCrystal &c, const Slope &s) {
  IndexReport r = TangentComplex(p, s).report(c);
  if (!r.isolated())
    throw DomainError("fixed point not isolated for this slope: " + std::to_string(r.zero_tangent) +
                      " zero-weight tangent directions");
  return r;
}

std::optional<CycleFunctional> zero_weight_cycle(const Quiver &q, const Slope &s, int max_len) {
  for (auto &c : elementary_cycles(q, std::max(max_len, 1)))
    if (c.weight_of(s) == 0)
      return c;
  return std::nullopt;
}

bool is_generic(const AtomPoset &p, const std::vector<MoltenCrystal> &crystals, const Slope &s,
                int max_size) {
  if (s.is_zero())
    return false;
  if (zero_weight_cycle(p.quiver(), s, 2 * std::max(max_size, 1)))
    return false;
  TangentComplex complex(p, s);
  return std::all_of(crystals.begin(), crystals.end(), [&](const MoltenCrystal &c) {
    return c.size() > static_cast<std::size_t>(max_size) || complex.report(c).isolated();
  });
}

bool is_generic(const Quiver &q, const Slope &s, int max_size, int threads) {
  if (s.is_zero())
    return false;
  const AtomPoset p = build_atom_poset(q, std::max(max_size - 1, 0));
  return is_generic(p, enumerate_crystals(p, max_size, threads), s, max_size);
}

} // namespace dtloc
