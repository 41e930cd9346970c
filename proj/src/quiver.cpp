#include "dtloc/quiver.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dtloc/errors.hpp"

namespace dtloc {

std::optional<int> Quiver::vertex_index(std::string_view name) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == name)
      return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> Quiver::arrow_index(std::string_view name) const {
  for (std::size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == name)
      return static_cast<int>(i);
  return std::nullopt;
}

std::string Quiver::render_word(const std::vector<int> &word, std::string_view sep) const {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i)
      out += sep;
    out += arrows.at(word[i]).name;
  }
  return out;
}

namespace {

struct Token {
  std::string text;
  int line;
  int column;
};

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n')
        advance(1);
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == ';' || c == '+' || c == '-') {
      tokens.push_back({std::string(1, c), line, column});
      advance(1);
    } else if (is_ident_char(c)) {
      std::size_t j = i;
      while (j < text.size() && is_ident_char(text[j]))
        ++j;
      tokens.push_back({std::string(text.substr(i, j - i)), line, column});
      advance(j - i);
    } else {
      throw ParseError(line, column, std::string("unexpected character '") + c + "'");
    }
  }
  return tokens;
}

class Parser {
public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {
    int line = 1;
    int column = 1;
    for (char c : text) {
      if (c == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    end_line_ = line;
    end_column_ = column;
  }

  Quiver parse() {
    Quiver q;
    while (pos_ < tokens_.size()) {
      const Token &kw = next("statement");
      if (kw.text == "vertex") {
        const Token &id = identifier("vertex id");
        if (q.vertex_index(id.text))
          throw ParseError(id.line, id.column, "duplicate vertex '" + id.text + "'");
        q.vertices.push_back(id.text);
        optional_semicolon();
      } else if (kw.text == "arrow") {
        const Token &name = identifier("arrow name");
        if (q.arrow_index(name.text))
          throw ParseError(name.line, name.column, "duplicate arrow name '" + name.text + "'");
        int src = vertex(q, identifier("source vertex"));
        int dst = vertex(q, identifier("target vertex"));
        semicolon();
        q.arrows.push_back({name.text, src, dst});
      } else if (kw.text == "potential") {
        q.potential.push_back(potential_term(q, kw));
      } else if (kw.text == "framing") {
        const Token &id = identifier("framed vertex");
        int v = vertex(q, id);
        if (std::find(q.framings.begin(), q.framings.end(), v) != q.framings.end())
          throw ParseError(id.line, id.column,
                           "framing multiplicity > 1 at vertex '" + id.text + "' is not supported");
        q.framings.push_back(v);
        optional_semicolon();
      } else {
        throw ParseError(kw.line, kw.column, "unknown statement '" + kw.text + "'");
      }
    }
    if (q.framings.empty())
      throw ParseError(end_line_, end_column_, "missing framing statement");
    if (!q.potential.empty()) {
      std::vector<bool> used(q.arrows.size(), false);
      for (const auto &t : q.potential)
        for (int a : t.word)
          used[a] = true;
      for (std::size_t a = 0; a < used.size(); ++a)
        if (!used[a])
          q.warnings.push_back("arrow '" + q.arrows[a].name + "' appears in no potential term");
    }
    return q;
  }

private:
  const Token &next(const char *what) {
    if (pos_ >= tokens_.size())
      throw ParseError(end_line_, end_column_, std::string("unexpected end of input, expected ") + what);
    return tokens_[pos_++];
  }

  const Token &identifier(const char *what) {
    const Token &t = next(what);
    if (!is_ident_char(t.text[0]))
      throw ParseError(t.line, t.column, std::string("expected ") + what + ", got '" + t.text + "'");
    return t;
  }

  void semicolon() {
    const Token &t = next("';'");
    if (t.text != ";")
      throw ParseError(t.line, t.column, "expected ';', got '" + t.text + "'");
  }

  void optional_semicolon() {
    if (pos_ < tokens_.size() && tokens_[pos_].text == ";")
      ++pos_;
  }

  static int vertex(const Quiver &q, const Token &t) {
    auto v = q.vertex_index(t.text);
    if (!v)
      throw ParseError(t.line, t.column, "unknown vertex '" + t.text + "'");
    return *v;
  }

  PotentialTerm potential_term(const Quiver &q, const Token &kw) {
    PotentialTerm term;
    const Token &sign = next("'+' or '-'");
    if (sign.text == "+")
      term.sign = 1;
    else if (sign.text == "-")
      term.sign = -1;
    else
      throw ParseError(sign.line, sign.column, "expected '+' or '-', got '" + sign.text + "'");
    while (true) {
      const Token &t = next("arrow or ';'");
      if (t.text == ";")
        break;
      auto a = q.arrow_index(t.text);
      if (!a)
        throw ParseError(t.line, t.column, "unknown arrow '" + t.text + "' in potential");
      term.word.push_back(*a);
    }
    if (term.word.empty())
      throw ParseError(kw.line, kw.column, "empty potential term");
    for (std::size_t i = 0; i < term.word.size(); ++i) {
      const Arrow &cur = q.arrows[term.word[i]];
      const Arrow &nxt = q.arrows[term.word[(i + 1) % term.word.size()]];
      if (cur.target != nxt.source)
        throw ParseError(kw.line, kw.column,
                         "non-closed potential term: '" + cur.name + "' ends at vertex '" +
                             q.vertices[cur.target] + "' but '" + nxt.name + "' starts at '" +
                             q.vertices[nxt.source] + "'");
    }
    return term;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int end_line_ = 1;
  int end_column_ = 1;
};

constexpr std::string_view kC3 = R"(# C^3: one vertex, three loops, W = xyz - xzy
vertex 0
arrow x 0 0 ;
arrow y 0 0 ;
arrow z 0 0 ;
potential + x y z ;
potential - x z y ;
framing 0
)";

constexpr std::string_view kConifold = R"(# resolved conifold (Klebanov-Witten quiver)
vertex 1
vertex 2
arrow a1 1 2 ;
arrow a2 1 2 ;
arrow b1 2 1 ;
arrow b2 2 1 ;
potential + a1 b1 a2 b2 ;
potential - a1 b2 a2 b1 ;
framing 1
)";

constexpr std::string_view kLoop = R"(# one vertex, one loop, no potential
vertex 0
arrow x 0 0 ;
framing 0
)";

} // namespace

Quiver parse_quiver(std::string_view text) { return Parser(text).parse(); }

std::string serialize_quiver(const Quiver &q) {
  std::ostringstream out;
  for (const auto &v : q.vertices)
    out << "vertex " << v << "\n";
  for (const auto &a : q.arrows)
    out << "arrow " << a.name << " " << q.vertices[a.source] << " " << q.vertices[a.target] << " ;\n";
  for (const auto &t : q.potential)
    out << "potential " << (t.sign > 0 ? "+" : "-") << " " << q.render_word(t.word) << " ;\n";
  for (int f : q.framings)
    out << "framing " << q.vertices[f] << "\n";
  return out.str();
}

std::optional<std::string_view> builtin_document(std::string_view name) {
  if (name == "c3")
    return kC3;
  if (name == "conifold")
    return kConifold;
  if (name == "loop")
    return kLoop;
  return std::nullopt;
}

std::vector<std::string> builtin_names() { return {"c3", "conifold", "loop"}; }

Quiver builtin_quiver(std::string_view name) {
  auto doc = builtin_document(name);
  if (!doc)
    throw DomainError("unknown built-in model '" + std::string(name) + "'");
  return parse_quiver(*doc);
}

Quiver disjoint_union(const Quiver &a, const Quiver &b, std::string_view prefix_a,
                      std::string_view prefix_b) {
  Quiver out;
  auto append = [&out](const Quiver &q, std::string_view prefix) {
    const int v0 = static_cast<int>(out.vertices.size());
    const int a0 = static_cast<int>(out.arrows.size());
    for (const auto &v : q.vertices)
      out.vertices.push_back(std::string(prefix) + v);
    for (const auto &ar : q.arrows)
      out.arrows.push_back({std::string(prefix) + ar.name, ar.source + v0, ar.target + v0});
    for (auto t : q.potential) {
      for (int &i : t.word)
        i += a0;
      out.potential.push_back(std::move(t));
    }
    for (int f : q.framings)
      out.framings.push_back(f + v0);
  };
  append(a, prefix_a);
  append(b, prefix_b);
  return out;
}

std::int64_t Slope::weight_of(const std::vector<int> &word) const {
  std::int64_t w = 0;
  for (int a : word)
    w += weights.at(a);
  return w;
}

bool Slope::is_zero() const {
  return std::all_of(weights.begin(), weights.end(), [](std::int64_t w) { return w == 0; });
}

Slope Slope::operator-() const {
  Slope out = *this;
  for (auto &w : out.weights)
    w = -w;
  return out;
}

std::string Slope::render() const {
  std::string out;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (i)
      out += ",";
    out += std::to_string(weights[i]);
  }
  return out;
}

Slope make_slope(const Quiver &q, const std::map<std::string, std::int64_t> &weights) {
  Slope s;
  for (const auto &a : q.arrows) {
    auto it = weights.find(a.name);
    if (it == weights.end())
      throw DomainError("slope has no weight for arrow '" + a.name + "'");
    s.weights.push_back(it->second);
  }
  for (const auto &[name, w] : weights)
    if (!q.arrow_index(name))
      throw DomainError("slope names unknown arrow '" + name + "'");
  return s;
}

Slope parse_slope(const Quiver &q, std::string_view text) {
  Slope s;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view field = text.substr(start, end - start);
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.front())))
      field.remove_prefix(1);
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.back())))
      field.remove_suffix(1);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
      throw std::invalid_argument("malformed slope entry '" + std::string(field) + "'");
    s.weights.push_back(value);
    start = end + 1;
  }
  if (s.weights.size() != q.arrow_count())
    throw std::invalid_argument("slope has " + std::to_string(s.weights.size()) +
                                " entries but the quiver has " + std::to_string(q.arrow_count()) +
                                " arrows");
  return s;
}

Slope concat_slopes(const Slope &a, const Slope &b) {
  Slope out = a;
  out.weights.insert(out.weights.end(), b.weights.begin(), b.weights.end());
  return out;
}

std::vector<std::size_t> validate_slope(const Quiver &q, const Slope &s) {
  if (s.weights.size() != q.arrow_count())
    throw DomainError("slope must assign a weight to each of the " + std::to_string(q.arrow_count()) +
                      " arrows (got " + std::to_string(s.weights.size()) + ")");
  std::vector<std::size_t> violated;
  for (std::size_t t = 0; t < q.potential.size(); ++t)
    if (s.weight_of(q.potential[t].word) != 0)
      violated.push_back(t);
  return violated;
}

std::vector<Slope> slope_lattice_basis(const Quiver &q) {
  const std::size_t n = q.arrow_count();
  const std::size_t m = q.potential.size();
  // Term-arrow incidence matrix; unimodular column operations (tracked in
  // `basis`) bring it to column echelon form. Columns past the last pivot
  // span the integer kernel.
  std::vector<std::vector<std::int64_t>> mat(m, std::vector<std::int64_t>(n, 0));
  for (std::size_t t = 0; t < m; ++t)
    for (int a : q.potential[t].word)
      ++mat[t][a];
  std::vector<std::vector<std::int64_t>> basis(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    basis[i][i] = 1;

  auto col_axpy = [&](std::size_t dst, std::size_t src, std::int64_t factor) {
    for (std::size_t r = 0; r < m; ++r)
      mat[r][dst] -= factor * mat[r][src];
    for (std::size_t r = 0; r < n; ++r)
      basis[r][dst] -= factor * basis[r][src];
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    if (i == j)
      return;
    for (auto &row : mat)
      std::swap(row[i], row[j]);
    for (auto &row : basis)
      std::swap(row[i], row[j]);
  };

  std::size_t pivot = 0;
  for (std::size_t r = 0; r < m && pivot < n; ++r) {
    while (true) {
      std::size_t best = n;
      std::size_t nonzero = 0;
      for (std::size_t j = pivot; j < n; ++j) {
        if (mat[r][j] == 0)
          continue;
        ++nonzero;
        if (best == n || std::abs(mat[r][j]) < std::abs(mat[r][best]))
          best = j;
      }
      if (nonzero == 0)
        break;
      if (nonzero == 1) {
        col_swap(pivot, best);
        ++pivot;
        break;
      }
      for (std::size_t j = pivot; j < n; ++j)
        if (j != best && mat[r][j] != 0)
          col_axpy(j, best, mat[r][j] / mat[r][best]);
    }
  }

  std::vector<Slope> out;
  for (std::size_t j = pivot; j < n; ++j) {
    Slope s;
    for (std::size_t r = 0; r < n; ++r)
      s.weights.push_back(basis[r][j]);
    // Sign normalization: first nonzero entry positive.
    auto first = std::find_if(s.weights.begin(), s.weights.end(), [](auto w) { return w != 0; });
    if (first != s.weights.end() && *first < 0)
      s = -s;
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

std::vector<int> least_rotation(const Quiver &q, const std::vector<int> &cycle) {
  auto names = [&](const std::vector<int> &w) {
    std::vector<std::string_view> out;
    for (int a : w)
      out.push_back(q.arrows[a].name);
    return out;
  };
  std::vector<int> best = cycle;
  auto best_names = names(best);
  std::vector<int> rot = cycle;
  for (std::size_t k = 1; k < cycle.size(); ++k) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    auto rn = names(rot);
    if (rn < best_names) {
      best = rot;
      best_names = std::move(rn);
    }
  }
  return best;
}

} // namespace

std::vector<CycleFunctional> elementary_cycles(const Quiver &q, int max_len) {
  if (max_len < 1)
    throw std::invalid_argument("max_len must be at least 1");
  const int nv = static_cast<int>(q.vertices.size());
  std::vector<std::vector<int>> out_arrows(nv);
  for (std::size_t a = 0; a < q.arrows.size(); ++a)
    out_arrows[q.arrows[a].source].push_back(static_cast<int>(a));

  std::set<std::vector<int>> seen;
  std::vector<CycleFunctional> cycles;
  std::vector<int> path;
  std::vector<bool> on_path(nv, false);

  // Each simple cycle is found once from its least vertex.
  auto dfs = [&](auto &&self, int start, int at) -> void {
    for (int a : out_arrows[at]) {
      int t = q.arrows[a].target;
      if (t == start) {
        path.push_back(a);
        auto canon = least_rotation(q, path);
        if (seen.insert(canon).second)
          cycles.push_back({std::move(canon)});
        path.pop_back();
      } else if (t > start && !on_path[t] && static_cast<int>(path.size()) + 1 < max_len) {
        on_path[t] = true;
        path.push_back(a);
        self(self, start, t);
        path.pop_back();
        on_path[t] = false;
      }
    }
  };
  for (int v = 0; v < nv; ++v) {
    on_path[v] = true;
    dfs(dfs, v, v);
    on_path[v] = false;
  }

  std::sort(cycles.begin(), cycles.end(), [&](const CycleFunctional &a, const CycleFunctional &b) {
    if (a.cycle.size() != b.cycle.size())
      return a.cycle.size() < b.cycle.size();
    return q.render_word(a.cycle) < q.render_word(b.cycle);
  });
  return cycles;
}

int default_cycle_bound(const Quiver &q) {
  std::size_t longest = 0;
  for (const auto &t : q.potential)
    longest = std::max(longest, t.word.size());
  return std::max<int>(1, 2 * static_cast<int>(longest));
}

} // namespace dtloc
