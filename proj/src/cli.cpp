#include "dtloc/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "dtloc/bbsmooth.hpp"
#include "dtloc/crystal.hpp"
#include "dtloc/errors.hpp"
#include "dtloc/localize.hpp"
#include "dtloc/quiver.hpp"
#include "dtloc/tangent.hpp"

namespace dtloc::cli {

using Json = nlohmann::ordered_json;

namespace {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct LoadedModel {
  std::string name;
  Quiver quiver;
  bool builtin = false;
};

LoadedModel load_model(const RunConfig &cfg) {
  if (cfg.model.has_value() == cfg.quiver_path.has_value())
    throw UsageError("exactly one of --model or --quiver is required");
  if (cfg.model) {
    auto doc = builtin_document(*cfg.model);
    if (!doc)
      throw UsageError("unknown model '" + *cfg.model + "' (built-ins: c3, conifold, loop)");
    return {*cfg.model, parse_quiver(*doc), true};
  }
  std::ifstream in(*cfg.quiver_path);
  if (!in)
    throw UsageError("cannot read quiver file '" + *cfg.quiver_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return {*cfg.quiver_path, parse_quiver(buf.str()), false};
}

Slope require_slope(const Quiver &q, const std::optional<std::string> &text, const char *flag) {
  if (!text)
    throw UsageError(std::string(flag) + " is required");
  try {
    return parse_slope(q, *text);
  } catch (const std::invalid_argument &e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

Json int_or_string(const BigInt &v) {
  if (v.fits_slong_p())
    return Json(v.get_si());
  return Json(v.get_str());
}

Json laurent_json(const HalfLaurent &p) {
  Json terms = Json::array();
  for (const auto &[k, c] : p.terms())
    terms.push_back(Json::array({k, int_or_string(c)}));
  return terms;
}

Json slope_json(const Slope &s) {
  Json arr = Json::array();
  for (auto w : s.weights)
    arr.push_back(w);
  return arr;
}

void emit(std::ostream &out, const Json &j) { out << j.dump(2) << "\n"; }

int cmd_validate(const RunConfig &cfg, std::ostream &out) {
  const auto m = load_model(cfg);
  const Quiver &q = m.quiver;
  const auto basis = slope_lattice_basis(q);
  std::optional<Slope> slope;
  std::vector<std::size_t> violated;
  if (cfg.slope) {
    slope = require_slope(q, cfg.slope, "--slope");
    violated = validate_slope(q, *slope);
  }
  if (cfg.json) {
    Json j;
    j["model"] = m.name;
    j["vertices"] = q.vertices;
    Json arrows = Json::array();
    for (const auto &a : q.arrows)
      arrows.push_back(Json::array({a.name, q.vertices[a.source], q.vertices[a.target]}));
    j["arrows"] = arrows;
    Json pot = Json::array();
    for (const auto &t : q.potential)
      pot.push_back(Json::array({t.sign, q.render_word(t.word)}));
    j["potential"] = pot;
    Json fr = Json::array();
    for (int f : q.framings)
      fr.push_back(q.vertices[f]);
    j["framings"] = fr;
    Json b = Json::array();
    for (const auto &s : basis)
      b.push_back(slope_json(s));
    j["slope_lattice_basis"] = b;
    j["warnings"] = q.warnings;
    if (slope) {
      j["slope"] = slope_json(*slope);
      j["violated_terms"] = violated;
    }
    emit(out, j);
  } else {
    out << "model: " << m.name << "\n";
    out << "vertices: " << q.vertices.size() << "  arrows: " << q.arrows.size()
        << "  potential terms: " << q.potential.size() << "  framings: " << q.framings.size() << "\n";
    out << "slope lattice rank: " << basis.size() << "\n";
    for (const auto &s : basis)
      out << "  basis slope: " << s.render() << "\n";
    for (const auto &w : q.warnings)
      out << "warning: " << w << "\n";
    if (slope) {
      if (violated.empty()) {
        out << "slope " << slope->render() << ": preserves the potential\n";
      } else {
        out << "slope " << slope->render() << ": violated terms";
        for (auto t : violated)
          out << " [" << (q.potential[t].sign > 0 ? "+" : "-") << q.render_word(q.potential[t].word) << "]";
        out << "\n";
      }
    }
  }
  if (!violated.empty())
    throw DomainError("slope " + slope->render() + " does not preserve the potential");
  return kExitOk;
}

int cmd_fixedpoints(const RunConfig &cfg, std::ostream &out) {
  const auto m = load_model(cfg);
  if (cfg.max_boxes < 0)
    throw UsageError("--max-boxes must be non-negative");
  const AtomPoset p = build_atom_poset(m.quiver, std::max(cfg.max_boxes - 1, 0));
  const auto crystals = enumerate_crystals(p, cfg.max_boxes, cfg.threads);
  std::vector<std::size_t> counts(static_cast<std::size_t>(cfg.max_boxes) + 1, 0);
  for (const auto &c : crystals)
    ++counts[c.size()];
  if (cfg.json) {
    Json j;
    j["model"] = m.name;
    j["max_boxes"] = cfg.max_boxes;
    j["conditional_on_confluence_check"] = !m.builtin;
    j["counts"] = counts;
    Json list = Json::array();
    for (std::size_t i = 0; i < crystals.size(); ++i) {
      Json atoms = Json::array();
      for (int id : crystals[i].atoms)
        atoms.push_back(p.render_atom(id));
      Json c;
      c["id"] = i;
      c["size"] = crystals[i].size();
      c["atoms"] = atoms;
      list.push_back(c);
    }
    j["crystals"] = list;
    emit(out, j);
  } else {
    out << "model: " << m.name << "  max boxes: " << cfg.max_boxes << "\n";
    out << "size  count\n";
    for (std::size_t n = 0; n < counts.size(); ++n)
      out << std::setw(4) << n << "  " << counts[n] << "\n";
    if (!m.builtin)
      out << "note: fixed points are molten crystals conditional on the confluence check\n";
  }
  return kExitOk;
}

int cmd_index(const RunConfig &cfg, std::ostream &out) {
  const auto m = load_model(cfg);
  const Slope s = require_slope(m.quiver, cfg.slope, "--slope");
  if (auto v = validate_slope(m.quiver, s); !v.empty())
    throw DomainError("slope " + s.render() + " does not preserve the potential");
  const AtomPoset p = build_atom_poset(m.quiver, std::max(cfg.max_boxes - 1, 0));
  const auto crystals = enumerate_crystals(p, cfg.max_boxes, cfg.threads);
  std::vector<IndexReport> reports;
  reports.reserve(crystals.size());
  for (const auto &c : crystals)
    reports.push_back(tangent_complex_weights(p, c, s));
  if (cfg.json) {
    Json j;
    j["model"] = m.name;
    j["slope"] = slope_json(s);
    j["max_boxes"] = cfg.max_boxes;
    Json list = Json::array();
    for (std::size_t i = 0; i < crystals.size(); ++i) {
      const auto &r = reports[i];
      Json e;
      e["id"] = i;
      e["size"] = crystals[i].size();
      Json atoms = Json::array();
      for (int id : crystals[i].atoms)
        atoms.push_back(p.render_atom(id));
      e["atoms"] = atoms;
      Json degs = Json::array();
      for (const auto &d : r.deg_weights)
        degs.push_back(d);
      e["deg_weights"] = degs;
      e["d_plus"] = r.d_plus;
      e["d_zero"] = r.d_zero;
      e["zero_tangent"] = r.zero_tangent;
      e["d_minus"] = r.d_minus;
      e["ind"] = r.ind;
      list.push_back(e);
    }
    j["fixed_points"] = list;
    emit(out, j);
  } else {
    out << "model: " << m.name << "  slope: " << s.render() << "\n";
    out << "size    id   ind\n";
    for (std::size_t i = 0; i < crystals.size(); ++i)
      out << std::setw(4) << crystals[i].size() << "  " << std::setw(4) << i << "  " << std::setw(4)
          << reports[i].ind << "\n";
  }
  return kExitOk;
}

int cmd_series(const RunConfig &cfg, std::ostream &out) {
  const auto m = load_model(cfg);
  const Slope s = require_slope(m.quiver, cfg.slope, "--slope");
  if (cfg.order < 0)
    throw UsageError("--order must be non-negative");
  const auto ls = localization_series(m.quiver, s, cfg.order, cfg.threads);
  const TruncatedSeries shown = cfg.qneg ? ls.series.negate_q() : ls.series;
  const std::string compact = m.builtin ? circle_compact_annotation(m.name, s) : "unknown";
  if (cfg.json) {
    Json j;
    j["model"] = m.name;
    j["slope"] = slope_json(s);
    j["order"] = cfg.order;
    j["sign_convention"] = cfg.qneg ? "qneg" : "none";
    j["circle_compact"] = compact;
    Json coeffs = Json::array();
    for (const auto &c : shown.coeffs())
      coeffs.push_back(laurent_json(c));
    j["coefficients"] = coeffs;
    emit(out, j);
  } else {
    out << "model: " << m.name << "  slope: " << s.render() << "  order: " << cfg.order << "\n";
    out << "degree  coefficient\n";
    for (int n = 0; n <= shown.order(); ++n)
      out << std::setw(6) << n << "  " << shown[n].render() << "\n";
    if (compact != "yes")
      out << "note: this is the virtual class of the attracting locus of the slope; it equals the "
             "class of the moduli space only for circle-compact actions (circle-compact: "
          << compact << ")\n";
  }
  return kExitOk;
}

int cmd_walls(const RunConfig &cfg, std::ostream &out) {
  const auto m = load_model(cfg);
  const Slope s = require_slope(m.quiver, cfg.slope, "--slope");
  const int len = cfg.max_cycle_len.value_or(default_cycle_bound(m.quiver));
  if (len < 1)
    throw UsageError("--max-cycle-len must be at least 1");
  const auto r = wall_report(m.quiver, s, len);
  if (cfg.json) {
    Json j;
    j["model"] = m.name;
    j["slope"] = slope_json(s);
    j["max_cycle_len"] = len;
    Json cycles = Json::array();
    for (std::size_t i = 0; i < r.cycles.size(); ++i)
      cycles.push_back(Json::array({m.quiver.render_word(r.cycles[i].cycle), r.weights[i]}));
    j["cycles"] = cycles;
    j["chamber_signature"] = r.chamber_signature;
    Json walls = Json::array();
    for (const auto &c : r.walls_hit)
      walls.push_back(m.quiver.render_word(c.cycle));
    j["walls_hit"] = walls;
    emit(out, j);
  } else {
    out << "model: " << m.name << "  slope: " << s.render() << "  max cycle length: " << len << "\n";
    out << "cycle  weight  sign\n";
    for (std::size_t i = 0; i < r.cycles.size(); ++i) {
      const int sg = r.chamber_signature[i];
      out << m.quiver.render_word(r.cycles[i].cycle) << "  " << r.weights[i] << "  "
          << (sg > 0 ? "+" : sg < 0 ? "-" : "0") << "\n";
    }
    if (r.walls_hit.empty()) {
      out << "walls hit: none\n";
    } else {
      out << "walls hit:";
      for (const auto &c : r.walls_hit)
        out << " [" << m.quiver.render_word(c.cycle) << "]";
      out << "\n";
    }
  }
  return kExitOk;
}

int cmd_compare(const RunConfig &cfg, std::ostream &out) {
  const auto m = load_model(cfg);
  const Slope a = require_slope(m.quiver, cfg.slope, "--slope-a");
  const Slope b = require_slope(m.quiver, cfg.slope_b, "--slope-b");
  const auto cmp = compare_chambers(m.quiver, a, b, cfg.order, cfg.threads);
  if (cfg.json) {
    Json j;
    j["model"] = m.name;
    j["slope_a"] = slope_json(a);
    j["slope_b"] = slope_json(b);
    j["order"] = cfg.order;
    j["equal"] = cmp.equal;
    j["first_differing_degree"] = cmp.first_differing_degree ? Json(*cmp.first_differing_degree) : Json();
    emit(out, j);
  } else if (cmp.equal) {
    out << "equal up to order " << cfg.order << "\n";
  } else {
    out << "differ at degree " << *cmp.first_differing_degree << "\n";
  }
  return kExitOk;
}

int cmd_bbcheck(const RunConfig &cfg, std::ostream &out) {
  LinearProjectiveAction action;
  try {
    action = parse_factors(cfg.factors);
  } catch (const std::invalid_argument &e) {
    throw UsageError(std::string("--factors: ") + e.what());
  }
  const auto cells = bb_cells(action);
  const auto eq1 = verify_eq1(action);
  const bool dual = verify_duality(action);
  if (cfg.json) {
    Json j;
    Json fs = Json::array();
    for (const auto &f : action.factors)
      fs.push_back(f);
    j["factors"] = fs;
    Json cs = Json::array();
    for (const auto &c : cells) {
      Json e;
      e["fixed_point"] = c.label();
      e["d_plus"] = c.d_plus;
      e["d_minus"] = c.d_minus;
      cs.push_back(e);
    }
    j["cells"] = cs;
    j["class"] = laurent_json(eq1.lhs);
    j["cell_sum"] = laurent_json(eq1.rhs);
    j["equal"] = eq1.equal;
    j["duality"] = dual;
    emit(out, j);
  } else {
    out << "fixed point  d+  d-\n";
    for (const auto &c : cells)
      out << c.label() << "  " << c.d_plus << "  " << c.d_minus << "\n";
    out << "class:     " << eq1.lhs.render() << "\n";
    out << "cell sum:  " << eq1.rhs.render() << "\n";
    out << "verdict: " << (eq1.equal ? "equal" : "NOT equal") << "\n";
    out << "duality: " << (dual ? "holds" : "FAILS") << "\n";
  }
  if (!eq1.equal || !dual)
    throw DomainError("cell decomposition does not reproduce the class");
  return kExitOk;
}

} // namespace

int resolve_threads(std::optional<int> flag) {
  if (flag)
    return std::max(1, *flag);
  if (const char *env = std::getenv("DTLOC_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception &) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  try {
    switch (cfg.command) {
    case Command::Validate:
      return cmd_validate(cfg, out);
    case Command::FixedPoints:
      return cmd_fixedpoints(cfg, out);
    case Command::Index:
      return cmd_index(cfg, out);
    case Command::Series:
      return cmd_series(cfg, out);
    case Command::Walls:
      return cmd_walls(cfg, out);
    case Command::Compare:
      return cmd_compare(cfg, out);
    case Command::BBCheck:
      return cmd_bbcheck(cfg, out);
    }
  } catch (const UsageError &e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError &e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Refined DT generating series of framed toric quivers by torus localization", "dtloc"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::optional<int> threads;
  std::string sign_convention = "none";

  auto add_model = [&](CLI::App *sub) {
    sub->add_option("--model", cfg.model, "built-in model: c3, conifold, loop");
    sub->add_option("--quiver", cfg.quiver_path, "quiver description file");
  };
  auto add_common = [&](CLI::App *sub) {
    sub->add_flag("--json", cfg.json, "machine-readable output");
    sub->add_option("--threads", threads, "worker thread cap (fallback: DTLOC_THREADS)");
  };

  auto *validate = app.add_subcommand("validate", "parse and check a model (and optionally a slope)");
  add_model(validate);
  validate->add_option("--slope", cfg.slope, "comma-separated arrow weights");
  add_common(validate);

  auto *fixed = app.add_subcommand("fixedpoints", "enumerate molten crystals");
  add_model(fixed);
  fixed->add_option("--max-boxes", cfg.max_boxes, "largest crystal size")->required();
  add_common(fixed);

  auto *index = app.add_subcommand("index", "index of every fixed point for a slope");
  add_model(index);
  index->add_option("--slope", cfg.slope)->required();
  index->add_option("--max-boxes", cfg.max_boxes)->required();
  add_common(index);

  auto *series = app.add_subcommand("series", "localization generating series");
  add_model(series);
  series->add_option("--slope", cfg.slope)->required();
  series->add_option("--order", cfg.order)->required();
  series->add_option("--sign-convention", sign_convention, "none | qneg (q -> -q)")
      ->check(CLI::IsMember({"none", "qneg"}));
  add_common(series);

  auto *walls = app.add_subcommand("walls", "chamber signature over elementary cycles");
  add_model(walls);
  walls->add_option("--slope", cfg.slope)->required();
  walls->add_option("--max-cycle-len", cfg.max_cycle_len);
  add_common(walls);

  auto *compare = app.add_subcommand("compare", "compare the series of two slopes");
  add_model(compare);
  compare->add_option("--slope-a", cfg.slope)->required();
  compare->add_option("--slope-b", cfg.slope_b)->required();
  compare->add_option("--order", cfg.order)->required();
  add_common(compare);

  auto *bbcheck = app.add_subcommand("bbcheck", "smooth cell decomposition on products of projective spaces");
  bbcheck->add_option("--factors", cfg.factors, "weights per factor, e.g. \"0,1,2;0,1\"")->required();
  add_common(bbcheck);

  std::vector<const char *> argv{"dtloc"};
  for (const auto &a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (validate->parsed())
    cfg.command = Command::Validate;
  else if (fixed->parsed())
    cfg.command = Command::FixedPoints;
  else if (index->parsed())
    cfg.command = Command::Index;
  else if (series->parsed())
    cfg.command = Command::Series;
  else if (walls->parsed())
    cfg.command = Command::Walls;
  else if (compare->parsed())
    cfg.command = Command::Compare;
  else
    cfg.command = Command::BBCheck;
  cfg.qneg = sign_convention == "qneg";
  cfg.threads = resolve_threads(threads);
  return run(cfg, out, err);
}

} // namespace dtloc::cli
