#include "dtloc/crystal.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "dtloc/errors.hpp"
#include "dtloc/parallel.hpp"

namespace dtloc {

std::vector<Relation> binomial_relations(const Quiver &q) {
  std::vector<Relation> out;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    std::map<std::vector<int>, long> derivative;
    for (const auto &t : q.potential) {
      const auto &w = t.word;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] != static_cast<int>(a))
          continue;
        std::vector<int> rest(w.begin() + i + 1, w.end());
        rest.insert(rest.end(), w.begin(), w.begin() + i);
        derivative[rest] += t.sign;
      }
    }
    std::erase_if(derivative, [](const auto &kv) { return kv.second == 0; });
    if (derivative.empty())
      continue;
    const std::string &name = q.arrows[a].name;
    if (derivative.size() != 2 || derivative.begin()->second != -std::next(derivative.begin())->second)
      throw DomainError("relation for arrow '" + name + "' is not binomial; only toric potentials are supported");
    Relation r{static_cast<int>(a), derivative.begin()->first, std::next(derivative.begin())->first};
    if (r.lhs.size() != r.rhs.size())
      throw DomainError("relation for arrow '" + name + "' equates paths of different lengths (" +
                        q.render_word(r.lhs) + " = " + q.render_word(r.rhs) + "); not supported");
    if (r.lhs.empty())
      throw DomainError("relation for arrow '" + name + "' is a constant; not supported");
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b)
      parent[std::max(a, b)] = std::min(a, b);
  }
};

} // namespace

std::optional<int> AtomPoset::atom_of(int root, const std::vector<int> &word) const {
  if (root < 0 || root >= static_cast<int>(quiver_.framings.size()))
    return std::nullopt;
  int at = root; // framing atoms carry ids 0..#framings-1
  for (int a : word) {
    if (a < 0 || a >= static_cast<int>(arrow_count_))
      return std::nullopt;
    at = successor(at, a);
    if (at == kNone)
      return std::nullopt;
  }
  return at;
}

std::vector<std::size_t> AtomPoset::depth_counts() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(depth_bound_) + 1, 0);
  for (const auto &a : atoms_)
    ++counts[a.depth];
  return counts;
}

std::string AtomPoset::render_atom(int id) const {
  const Atom &a = atom(id);
  std::string out = quiver_.framings.size() > 1 ? "f" + std::to_string(a.root) : "";
  if (a.word.empty())
    return out.empty() ? "1" : out;
  if (!out.empty())
    out += ".";
  return out + quiver_.render_word(a.word, ".");
}

std::int64_t AtomPoset::weight(int id, const Slope &s) const {
  const Atom &a = atom(id);
  std::int64_t w = 0;
  for (std::size_t i = 0; i < a.arrow_counts.size(); ++i)
    w += static_cast<std::int64_t>(a.arrow_counts[i]) * s.weights.at(i);
  return w;
}

AtomPoset build_atom_poset(const Quiver &q, int depth_bound) {
  if (depth_bound < 0)
    throw std::invalid_argument("depth bound must be non-negative");
  const auto relations = binomial_relations(q);

  AtomPoset p;
  p.quiver_ = q;
  p.basis_ = slope_lattice_basis(q);
  p.depth_bound_ = depth_bound;
  p.arrow_count_ = q.arrow_count();
  const std::size_t na = p.arrow_count_;

  auto push_atom = [&](Atom atom) {
    atom.id = static_cast<int>(p.atoms_.size());
    atom.weight.clear();
    for (const auto &b : p.basis_) {
      std::int64_t w = 0;
      for (std::size_t i = 0; i < na; ++i)
        w += static_cast<std::int64_t>(atom.arrow_counts[i]) * b.weights[i];
      atom.weight.push_back(w);
    }
    p.atoms_.push_back(std::move(atom));
    p.successors_.resize(p.atoms_.size() * na, AtomPoset::kNone);
    p.predecessors_.emplace_back();
  };

  for (std::size_t f = 0; f < q.framings.size(); ++f) {
    Atom root;
    root.vertex = q.framings[f];
    root.root = static_cast<int>(f);
    root.arrow_counts.assign(na, 0);
    push_atom(std::move(root));
  }

  std::size_t layer_begin = 0;
  for (int d = 0; d < depth_bound; ++d) {
    const std::size_t layer_end = p.atoms_.size();

    // Candidates (atom, arrow) for depth d+1, indexed densely.
    std::vector<std::pair<int, int>> cands;
    std::vector<int> cand_of((layer_end - layer_begin) * na, -1);
    for (std::size_t id = layer_begin; id < layer_end; ++id)
      for (std::size_t a = 0; a < na; ++a)
        if (q.arrows[a].source == p.atoms_[id].vertex) {
          cand_of[(id - layer_begin) * na + a] = static_cast<int>(cands.size());
          cands.emplace_back(static_cast<int>(id), static_cast<int>(a));
        }
    auto cand_index = [&](int atom, int arrow) { return cand_of[(atom - layer_begin) * na + arrow]; };

    // A rewrite touching the last letter: C.u'.a ~ C.v'.b for a relation
    // u'a = v'b of length L and any atom C of depth d+1-L.
    UnionFind uf(cands.size());
    for (const auto &r : relations) {
      const int len = static_cast<int>(r.lhs.size());
      if (len > d + 1)
        continue;
      const int start_vertex = q.arrows[r.lhs.front()].source;
      for (std::size_t c = 0; c < layer_end; ++c) {
        if (p.atoms_[c].depth != d + 1 - len || p.atoms_[c].vertex != start_vertex)
          continue;
        auto walk = [&](const std::vector<int> &word) {
          int at = static_cast<int>(c);
          for (std::size_t i = 0; i + 1 < word.size(); ++i)
            at = p.successor(at, word[i]);
          return at;
        };
        const int x = walk(r.lhs);
        const int y = walk(r.rhs);
        uf.unite(cand_index(x, r.lhs.back()), cand_index(y, r.rhs.back()));
      }
    }

    std::vector<int> atom_of_class(cands.size(), AtomPoset::kNone);
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const int cls = uf.find(static_cast<int>(i));
      auto [from, arrow] = cands[i];
      if (atom_of_class[cls] == AtomPoset::kNone) {
        const Atom &parent = p.atoms_[from];
        Atom atom;
        atom.vertex = q.arrows[arrow].target;
        atom.root = parent.root;
        atom.depth = d + 1;
        atom.word = parent.word;
        atom.word.push_back(arrow);
        atom.arrow_counts = parent.arrow_counts;
        ++atom.arrow_counts[arrow];
        atom_of_class[cls] = static_cast<int>(p.atoms_.size());
        push_atom(std::move(atom));
      }
      const int target = atom_of_class[cls];
      p.successors_[from * na + arrow] = target;
      p.predecessors_[target].emplace_back(from, arrow);
    }

    // Distinct atoms at one depth must be distinguished by the torus.
    std::map<std::tuple<int, int, std::vector<std::int64_t>>, int> seen;
    for (std::size_t id = layer_end; id < p.atoms_.size(); ++id) {
      const Atom &atom = p.atoms_[id];
      auto [it, inserted] = seen.try_emplace({atom.root, atom.vertex, atom.weight}, atom.id);
      if (!inserted)
        throw DomainError("non-confluent relations at depth " + std::to_string(d + 1) + ": paths '" +
                          p.render_atom(it->second) + "' and '" + p.render_atom(atom.id) +
                          "' share vertex and torus weight but are not related by the potential");
    }
    layer_begin = layer_end;
  }
  return p;
}

bool MoltenCrystal::contains(int id) const { return std::binary_search(atoms.begin(), atoms.end(), id); }

bool is_order_ideal(const AtomPoset &p, const MoltenCrystal &c) {
  if (std::adjacent_find(c.atoms.begin(), c.atoms.end()) != c.atoms.end())
    return false;
  for (int id : c.atoms) {
    if (id < 0 || id >= static_cast<int>(p.atoms().size()))
      return false;
    for (const auto &[pred, arrow] : p.predecessors(id))
      if (!c.contains(pred))
        return false;
  }
  return true;
}

namespace {

// Children of `parent` under canonical-parent generation: the added atom must
// be the largest-id removable atom of the child.
void expand(const AtomPoset &p, const MoltenCrystal &parent, std::vector<char> &member,
            std::vector<MoltenCrystal> &out) {
  const std::size_t na = p.quiver().arrow_count();
  for (int id : parent.atoms)
    member[id] = 1;

  std::vector<int> candidates;
  for (std::size_t f = 0; f < p.quiver().framings.size(); ++f)
    if (!member[f])
      candidates.push_back(static_cast<int>(f));
  std::vector<int> maximal;
  for (int id : parent.atoms) {
    bool is_max = true;
    for (std::size_t a = 0; a < na; ++a) {
      int s = p.successor(id, static_cast<int>(a));
      if (s == AtomPoset::kNone)
        continue;
      if (member[s])
        is_max = false;
      else
        candidates.push_back(s);
    }
    if (is_max)
      maximal.push_back(id);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (int cand : candidates) {
    const auto &preds = p.predecessors(cand);
    bool addable = std::all_of(preds.begin(), preds.end(), [&](const auto &pr) { return member[pr.first]; });
    if (!addable)
      continue;
    bool canonical = true;
    for (int m : maximal) {
      if (m < cand)
        continue;
      bool below_cand = std::any_of(preds.begin(), preds.end(), [&](const auto &pr) { return pr.first == m; });
      if (!below_cand) {
        canonical = false;
        break;
      }
    }
    if (!canonical)
      continue;
    MoltenCrystal child;
    child.atoms = parent.atoms;
    child.atoms.insert(std::upper_bound(child.atoms.begin(), child.atoms.end(), cand), cand);
    out.push_back(std::move(child));
  }
  for (int id : parent.atoms)
    member[id] = 0;
}

} // namespace

std::vector<MoltenCrystal> enumerate_crystals(const AtomPoset &p, int max_size, int threads) {
  if (max_size < 0)
    throw std::invalid_argument("max_size must be non-negative");
  if (max_size > 0 && p.depth_bound() < max_size - 1)
    throw DomainError("insufficient poset depth: crystals of " + std::to_string(max_size) +
                      " atoms need depth " + std::to_string(max_size - 1) + ", poset has " +
                      std::to_string(p.depth_bound()));

  std::vector<MoltenCrystal> all{MoltenCrystal{}};
  std::vector<MoltenCrystal> level{MoltenCrystal{}};
  for (int n = 0; n < max_size; ++n) {
    const std::size_t chunks = chunk_count(level.size(), threads);
    std::vector<std::vector<MoltenCrystal>> partial(chunks);
    parallel_chunks(level.size(), threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
      std::vector<char> member(p.atoms().size(), 0);
      for (std::size_t i = begin; i < end; ++i)
        expand(p, level[i], member, partial[chunk]);
    });
    std::vector<MoltenCrystal> next;
    for (auto &part : partial)
      std::move(part.begin(), part.end(), std::back_inserter(next));
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }

  using Key = std::vector<std::vector<std::int64_t>>;
  std::vector<std::pair<Key, MoltenCrystal>> keyed;
  keyed.reserve(all.size());
  for (auto &c : all) {
    Key key;
    for (int id : c.atoms)
      key.push_back(p.atom(id).weight);
    std::sort(key.begin(), key.end());
    keyed.emplace_back(std::move(key), std::move(c));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto &a, const auto &b) {
    if (a.second.size() != b.second.size())
      return a.second.size() < b.second.size();
    if (a.first != b.first)
      return a.first < b.first;
    return a.second.atoms < b.second.atoms;
  });
  std::vector<MoltenCrystal> out;
  out.reserve(keyed.size());
  for (auto &kv : keyed)
    out.push_back(std::move(kv.second));
  return out;
}

std::vector<std::pair<int, std::int64_t>> crystal_weights(const AtomPoset &p, const MoltenCrystal &c,
                                                          const Slope &s) {
  std::vector<std::pair<int, std::int64_t>> out;
  out.reserve(c.size());
  for (int id : c.atoms)
    out.emplace_back(p.atom(id).vertex, p.weight(id, s));
  return out;
}

} // namespace dtloc
