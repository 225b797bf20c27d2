#pragma once

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmg/cubulation.hpp"
#include "qmg/error.hpp"
#include "qmg/generators.hpp"
#include "qmg/graph.hpp"
#include "qmg/graph_products.hpp"
#include "qmg/hyperplanes.hpp"
#include "qmg/io.hpp"
#include "qmg/recognition.hpp"
#include "qmg/relhyp.hpp"
#include "qmg/wreath.hpp"

namespace qmg::cli {

using nlohmann::json;

// ---------------------------------------------------------------------------
// corpus-run manifest
//
// {"entries": [{"name": "...",
//               "generator": {"kind": "random", "seed": 1, "steps": 8,
//                             "max_prism": 3, "max_factors": 3, "max_vertices": 300}
//                          | {"kind": "prism", "sizes": [3, 2]}
//                          | {"kind": "prism_family", "min": 2, "max": 5, "factors": 2}
//                          | {"kind": "graph", "graph": {...}},
//               "repeat": 200,          random only: seeds seed .. seed+repeat-1
//               "inject": "c5",         optional: glue a 5-cycle at vertex 0
//               "expect_hyperplanes": 3,
//               "checks": ["quasi_median", "median", "distance_theorem", "gated",
//                          "carrier", "hyperplane_count", "cubulation"]}]}

struct CorpusEntry {
  std::string name;
  json generator;
  std::uint64_t repeat = 1;
  bool inject_c5 = false;
  std::optional<std::size_t> expect_hyperplanes;
  std::vector<std::string> checks;
};

inline const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {"quasi_median", "median",           "distance_theorem", "gated",
                                                 "carrier",      "hyperplane_count", "cubulation"};
  return names;
}

inline std::vector<CorpusEntry> parse_manifest(const json& m) {
  using io::malformed;
  if (!m.is_object() || !m.contains("entries") || !m["entries"].is_array()) malformed("manifest needs an 'entries' array");
  std::vector<CorpusEntry> out;
  for (const auto& e : m["entries"]) {
    if (!e.is_object()) malformed("manifest entries must be objects");
    CorpusEntry c;
    c.name = e.value("name", "entry" + std::to_string(out.size()));
    if (!e.contains("generator") || !e["generator"].is_object() || !e["generator"].contains("kind"))
      malformed("entry '" + c.name + "' needs a generator with a 'kind'");
    c.generator = e["generator"];
    const std::string kind = c.generator["kind"].is_string() ? c.generator["kind"].get<std::string>() : "";
    if (kind == "random") {
      if (!c.generator.contains("steps")) malformed("random generator needs 'steps'");
      for (const char* key : {"seed", "steps", "max_prism", "max_factors", "max_vertices"})
        if (c.generator.contains(key)) io::as_count(c.generator[key], key);
    } else if (kind == "prism") {
      if (!c.generator.contains("sizes") || !c.generator["sizes"].is_array()) malformed("prism generator needs 'sizes'");
      for (const auto& s : c.generator["sizes"]) io::as_count(s, "prism size");
    } else if (kind == "prism_family") {
      for (const char* key : {"min", "max", "factors"}) {
        if (!c.generator.contains(key)) malformed(std::string("prism_family needs '") + key + "'");
        io::as_count(c.generator[key], key);
      }
    } else if (kind == "graph") {
      if (!c.generator.contains("graph")) malformed("graph generator needs 'graph'");
      io::graph_from_json(c.generator["graph"]);
    } else {
      malformed("unknown generator kind in entry '" + c.name + "'");
    }
    if (e.contains("repeat")) c.repeat = io::as_count(e["repeat"], "repeat");
    if (e.contains("inject")) {
      if (e["inject"] != "c5") malformed("only \"c5\" can be injected");
      c.inject_c5 = true;
    }
    if (e.contains("expect_hyperplanes")) c.expect_hyperplanes = io::as_count(e["expect_hyperplanes"], "expect_hyperplanes");
    if (!e.contains("checks") || !e["checks"].is_array()) malformed("entry '" + c.name + "' needs a 'checks' array");
    for (const auto& k : e["checks"]) {
      if (!k.is_string() || std::find(known_checks().begin(), known_checks().end(), k.get<std::string>()) == known_checks().end())
        malformed("unknown check " + k.dump() + " in entry '" + c.name + "'");
      c.checks.push_back(k.get<std::string>());
    }
    out.push_back(std::move(c));
  }
  return out;
}

struct Instance {
  Graph graph;
  std::string tag;
  std::optional<std::size_t> expect_hyperplanes;
};

inline Graph with_c5(const Graph& g) {
  const auto n = static_cast<Vertex>(g.size());
  std::vector<Edge> edges = g.edges();
  edges.push_back({0, n});
  edges.push_back({n, n + 1});
  edges.push_back({n + 1, n + 2});
  edges.push_back({n + 2, n + 3});
  edges.push_back({n + 3, 0});
  return Graph(g.size() + 4, edges);
}

inline std::vector<Instance> instances(const CorpusEntry& c) {
  std::vector<Instance> out;
  const json& gen = c.generator;
  const std::string kind = gen["kind"];
  auto sizes_of = [](const json& j) {
    std::vector<std::uint32_t> s;
    for (const auto& x : j) s.push_back(x.get<std::uint32_t>());
    return s;
  };
  auto nontrivial = [](const std::vector<std::uint32_t>& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](auto x) { return x > 1; }));
  };
  if (kind == "random") {
    RandomQuasiMedianOptions opt;
    opt.seed = gen.value("seed", std::uint64_t{1});
    opt.steps = gen["steps"].get<std::uint32_t>();
    opt.max_prism = gen.value("max_prism", opt.max_prism);
    opt.max_factors = gen.value("max_factors", opt.max_factors);
    opt.max_vertices = gen.value("max_vertices", opt.max_vertices);
    const std::uint64_t base = opt.seed;
    for (std::uint64_t r = 0; r < c.repeat; ++r) {
      opt.seed = base + r;
      out.push_back({random_quasi_median(opt), "seed=" + std::to_string(opt.seed), c.expect_hyperplanes});
    }
  } else if (kind == "prism") {
    auto s = sizes_of(gen["sizes"]);
    out.push_back({prism(s), gen["sizes"].dump(), c.expect_hyperplanes.value_or(nontrivial(s))});
  } else if (kind == "prism_family") {
    const auto lo = gen["min"].get<std::uint32_t>(), hi = gen["max"].get<std::uint32_t>();
    const auto k = gen["factors"].get<std::size_t>();
    if (lo < 1 || lo > hi || k == 0) throw Error(Errc::MalformedInput, "prism_family needs 1 <= min <= max and factors >= 1");
    std::vector<std::uint32_t> s(k, lo);
    for (;;) {
      out.push_back({prism(s), json(s).dump(), c.expect_hyperplanes.value_or(nontrivial(s))});
      std::size_t i = k;
      while (i > 0 && s[i - 1] == hi) s[--i] = lo;
      if (i == 0) break;
      ++s[i - 1];
    }
  } else {
    out.push_back({io::graph_from_json(gen["graph"]), "graph", c.expect_hyperplanes});
  }
  if (c.inject_c5)
    for (auto& inst : out) {
      inst.graph = with_c5(inst.graph);
      inst.tag += "+c5";
    }
  return out;
}

inline bool run_check(const std::string& check, const Instance& inst) {
  const Graph& g = inst.graph;
  if (check == "quasi_median") return is_quasi_median(g).positive();
  if (check == "median") return is_median(g).positive();
  auto d = compute_hyperplanes(g);
  if (check == "hyperplane_count") return inst.expect_hyperplanes && d.size() == *inst.expect_hyperplanes;
  if (check == "cubulation") {
    auto c = cubulate(walls_from_graph(g, d));
    return is_median(c.cx).positive();
  }
  DistanceMatrix dist(g);
  if (check == "distance_theorem") {
    for (Vertex x = 0; x < g.size(); ++x)
      for (Vertex y = x + 1; y < g.size(); ++y)
        if (dist(x, y) != separating_hyperplanes(d, x, y).size()) return false;
    return true;
  }
  if (check == "gated") {
    for (ClassId j = 0; j < d.size(); ++j) {
      if (!is_gated(dist, d.carrier(j))) return false;
      for (const auto& s : d.sectors(j))
        if (!is_gated(dist, s)) return false;
      for (const auto& f : d.fibers(j))
        if (!is_gated(dist, f)) return false;
    }
    return true;
  }
  for (ClassId j = 0; j < d.size(); ++j)
    if (!verify_carrier_decomposition(d, j, dist).ok) return false;
  return true;
}

/// Returns the summary and whether every check passed.
inline std::pair<json, bool> corpus_run(const std::vector<CorpusEntry>& entries) {
  json report = json::array();
  std::size_t passed = 0, failed = 0;
  for (const auto& c : entries) {
    std::vector<std::size_t> ok(c.checks.size(), 0), bad(c.checks.size(), 0);
    json failures = json::array();
    auto insts = instances(c);
    for (const auto& inst : insts)
      for (std::size_t k = 0; k < c.checks.size(); ++k) {
        bool good = false;
        std::string why;
        try {
          good = run_check(c.checks[k], inst);
        } catch (const Error& e) {
          why = e.what();
        }
        ++(good ? ok[k] : bad[k]);
        if (!good && failures.size() < 20) {
          json f = {{"instance", inst.tag}, {"check", c.checks[k]}};
          if (!why.empty()) f["error"] = why;
          failures.push_back(std::move(f));
        }
      }
    json checks = json::array();
    for (std::size_t k = 0; k < c.checks.size(); ++k) {
      checks.push_back({{"check", c.checks[k]}, {"passed", ok[k]}, {"failed", bad[k]}});
      passed += ok[k];
      failed += bad[k];
    }
    report.push_back({{"name", c.name}, {"instances", insts.size()}, {"checks", std::move(checks)}, {"failures", std::move(failures)}});
  }
  return {json{{"entries", std::move(report)}, {"passed", passed}, {"failed", failed}, {"ok", failed == 0}}, failed == 0};
}

inline std::string corpus_table(const json& summary) {
  std::ostringstream os;
  os << std::left << std::setw(28) << "entry" << std::setw(20) << "check" << std::right << std::setw(8) << "passed"
     << std::setw(8) << "failed" << '\n';
  for (const auto& e : summary["entries"]) {
    for (const auto& c : e["checks"])
      os << std::left << std::setw(28) << e["name"].get<std::string>() << std::setw(20) << c["check"].get<std::string>()
         << std::right << std::setw(8) << c["passed"].get<std::size_t>() << std::setw(8) << c["failed"].get<std::size_t>()
         << '\n';
    for (const auto& f : e["failures"]) os << "  FAIL " << f["instance"].get<std::string>() << ' ' << f["check"].get<std::string>() << '\n';
  }
  os << (summary["ok"].get<bool>() ? "all checks passed" : "some checks FAILED") << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------

inline std::vector<std::uint32_t> parse_sizes(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.size() > 6 || item.find_first_not_of("0123456789") != std::string::npos)
      io::malformed("bad list '" + text + "'");
    out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
  }
  if (out.empty()) io::malformed("empty list");
  return out;
}

inline VertexSet parse_omega(const json& j, std::size_t n) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "all") return VertexSet::full(n);
    VertexSet out(n);
    for (auto v : parse_sizes(s)) {
      if (v >= n) io::malformed("omega vertex out of range");
      out.insert(v);
    }
    return out;
  }
  return io::vertex_set_from_json(j, n);
}

inline std::string orientation_bits(const Orientation& o) {
  std::string s;
  for (std::size_t i = 0; i < o.size(); ++i) s += o.side(i) == Side::Sector ? '0' : '1';
  return s;
}

inline json wreath_result(const WreathConfig& cfg, const WreathCaps& caps) {
  auto w = build_wreath_graph(cfg, caps);
  std::size_t colourings = 1;
  for (std::size_t i = 0; i < cfg.omega.size(); ++i) colourings *= cfg.lamp_group.order();
  json dis = json::array();
  for (auto [a, b] : w.disagreements) dis.push_back({a, b});
  return {{"vertices", w.graph.size()},
          {"convex_sets", w.convex_sets.size()},
          {"expected_vertices", w.convex_sets.size() * colourings},
          {"verdict", io::to_json(is_quasi_median(w.graph))},
          {"disagreements", std::move(dis)},
          {"graph", io::to_json(w.graph)}};
}

/// Runs one command line (without the program name). JSON results go to
/// `out`; errors go to `err` as a one-line JSON object.
/// Exit codes: 0 success, 1 domain error or failed corpus, 2 malformed input.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasi-median graph toolkit", "qmg"};
  app.require_subcommand(1);
  bool pretty = false, dot = false, maximal_joins = false;
  app.add_flag("--pretty", pretty, "indented JSON; corpus-run prints a table");

  std::string file, word, sizes_text, omega_text = "all", group_text = "cyclic:2", config_file;
  std::uint64_t seed = 1;
  std::uint32_t steps = 1, max_prism = 3, max_factors = 3, radius = 0;
  std::size_t max_vertices = 300, cap = 0, convex_cap = kDefaultConvexCap, vertex_cap = 1'000'000;

  auto* check = app.add_subcommand("check", "quasi-median recognition");
  check->add_option("graph", file, "graph JSON")->required();
  auto* median = app.add_subcommand("median", "median recognition");
  median->add_option("graph", file, "graph JSON")->required();
  auto* hyper = app.add_subcommand("hyperplanes", "hyperplanes, sectors and the crossing graph");
  hyper->add_option("graph", file, "graph JSON")->required();
  hyper->add_flag("--dot", dot, "DOT of the crossing graph");

  auto* gen = app.add_subcommand("gen", "generate graphs");
  gen->require_subcommand(1);
  auto* gen_prism = gen->add_subcommand("prism", "product of complete graphs");
  gen_prism->add_option("sizes", sizes_text, "comma-separated factor sizes")->required();
  auto* gen_random = gen->add_subcommand("random", "random quasi-median graph");
  gen_random->add_option("--seed", seed);
  gen_random->add_option("--steps", steps)->required();
  gen_random->add_option("--max-prism", max_prism);
  gen_random->add_option("--max-factors", max_factors);
  gen_random->add_option("--max-vertices", max_vertices);

  auto add_reduce = [&](CLI::App* a) {
    a->add_option("presentation", file, "presentation JSON")->required();
    a->add_option("word", word, "syllables such as \"u1 v2 u1\"")->required();
  };
  auto add_cayley = [&](CLI::App* a) {
    a->add_option("presentation", file, "presentation JSON")->required();
    a->add_option("--radius", radius, "ball radius; omit for the whole (finite) group");
    a->add_option("--cap", cap, "vertex cap");
  };
  auto* gp = app.add_subcommand("gp", "graph products");
  gp->require_subcommand(1);
  auto* gp_reduce = gp->add_subcommand("reduce", "normal form of a word");
  auto* gp_cayley = gp->add_subcommand("cayley", "Cayley graph or ball");
  auto* gp_reduce2 = app.add_subcommand("gp-reduce", "same as gp reduce");
  auto* gp_cayley2 = app.add_subcommand("gp-cayley", "same as gp cayley");
  add_reduce(gp_reduce);
  add_reduce(gp_reduce2);
  add_cayley(gp_cayley);
  add_cayley(gp_cayley2);

  auto* relhyp = app.add_subcommand("relhyp", "relative hyperbolicity of a graph product");
  relhyp->add_option("labelled", file, "labelled gamma JSON")->required();
  relhyp->add_flag("--maximal-joins", maximal_joins, "also run with inclusion-maximal joins and require agreement");
  relhyp->add_option("--cap", cap, "vertex cap (default 16)");

  auto* cub = app.add_subcommand("cubulate", "cube complex of the sector wallspace");
  cub->add_option("graph", file, "graph JSON")->required();
  cub->add_flag("--dot", dot, "DOT of host and cube complex");
  cub->add_option("--cap", cap, "orientation cap");

  auto* wr = app.add_subcommand("wreath", "graph of wreaths");
  wr->add_option("--host", file, "median host graph JSON");
  wr->add_option("--omega", omega_text, "'all' or comma-separated vertices");
  wr->add_option("--group", group_text, "lamp group, cyclic:n");
  wr->add_option("--config", config_file, "{\"host\": graph, \"omega\": ..., \"group\": ...}");
  wr->add_option("--convex-cap", convex_cap);
  wr->add_option("--vertex-cap", vertex_cap);

  auto* corpus = app.add_subcommand("corpus-run", "run a manifest of generated instances and checks");
  corpus->add_option("manifest", file, "manifest JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << json{{"error", "MalformedInput"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }

  auto emit = [&](const json& j) { out << (pretty ? j.dump(2) : j.dump()) << '\n'; };
  try {
    if (*check) {
      emit(io::to_json(is_quasi_median(io::graph_from_json(io::read_json_file(file)))));
    } else if (*median) {
      emit(io::to_json(is_median(io::graph_from_json(io::read_json_file(file)))));
    } else if (*hyper) {
      auto g = io::graph_from_json(io::read_json_file(file));
      auto d = compute_hyperplanes(g);
      if (dot)
        out << to_dot(crossing_graph(d), "crossing");
      else
        emit(io::to_json(d));
    } else if (*gen_prism) {
      emit(io::to_json(prism(parse_sizes(sizes_text))));
    } else if (*gen_random) {
      RandomQuasiMedianOptions opt;
      opt.seed = seed;
      opt.steps = steps;
      opt.max_prism = max_prism;
      opt.max_factors = max_factors;
      opt.max_vertices = max_vertices;
      emit(io::to_json(random_quasi_median(opt)));
    } else if (*gp_reduce || *gp_reduce2) {
      auto p = io::presentation_from_json(io::read_json_file(file));
      auto w = reduce_word(p, parse_word(p, word));
      emit({{"reduced", w.empty() ? "1" : format_word(p, w)}, {"syllables", io::to_json(w)}, {"length", w.size()}});
    } else if (*gp_cayley || *gp_cayley2) {
      auto p = io::presentation_from_json(io::read_json_file(file));
      const std::size_t c = cap ? cap : kDefaultBallCap;
      auto cg = radius ? cayley_ball(p, radius, c) : full_cayley_graph(p, c);
      emit({{"vertices", cg.graph.size()},
            {"complete", cg.complete},
            {"interior", io::to_json(cg.interior)},
            {"graph", io::to_json(cg.graph)}});
    } else if (*relhyp) {
      auto lg = io::labelled_gamma_from_json(io::read_json_file(file));
      RelhypOptions opt;
      if (cap) opt.vertex_cap = cap;
      auto c = classify(lg, opt);
      json j = io::to_json(c);
      if (maximal_joins) {
        opt.mode = JoinMode::InclusionMaximal;
        auto m = classify(lg, opt);
        if (m.verdict != c.verdict || !(m.peripherals.members == c.peripherals.members))
          throw Error(Errc::InvalidArgument, "inclusion-maximal joins disagree with the full join set");
        j["maximal_joins_agree"] = true;
      }
      emit(j);
    } else if (*cub) {
      auto g = io::graph_from_json(io::read_json_file(file));
      auto ws = walls_from_graph(g, compute_hyperplanes(g));
      auto c = cubulate(ws, cap ? cap : kDefaultOrientationCap);
      if (dot) {
        std::vector<std::string> host_labels, cx_labels;
        for (Vertex v = 0; v < g.size(); ++v) host_labels.push_back(g.label(v) + " -> " + std::to_string(c.vertex_map[v]));
        for (const auto& o : c.orientations) cx_labels.push_back(orientation_bits(o));
        out << to_dot(Graph(g.size(), g.edges(), host_labels), "host");
        out << to_dot(Graph(c.cx.size(), c.cx.edges(), cx_labels), "cube_complex");
      } else {
        emit({{"walls", ws.walls.size()},
              {"cx", io::to_json(c.cx)},
              {"map", c.vertex_map},
              {"report", io::to_json(quasi_isometry_report(g, c.cx, c.vertex_map))}});
      }
    } else if (*wr) {
      json cfg_json;
      if (!config_file.empty()) {
        cfg_json = io::read_json_file(config_file);
        if (!cfg_json.is_object() || !cfg_json.contains("host")) io::malformed("wreath config needs 'host'");
      } else {
        if (file.empty()) io::malformed("wreath needs --host or --config");
        cfg_json = {{"host", io::read_json_file(file)}, {"omega", omega_text}, {"group", group_text}};
      }
      WreathConfig cfg{io::graph_from_json(cfg_json["host"]), {}};
      cfg.omega = parse_omega(cfg_json.value("omega", json("all")), cfg.host.size());
      const json group = cfg_json.value("group", json("cyclic:2"));
      if (group.is_string()) {
        cfg.lamp_group = io::group_from_string(group.get<std::string>());
      } else {
        auto spec = io::group_from_json(group);
        if (!std::holds_alternative<FiniteGroup>(spec)) io::malformed("lamp group must be finite");
        cfg.lamp_group = std::get<FiniteGroup>(spec);
      }
      emit(wreath_result(cfg, {convex_cap, vertex_cap}));
    } else if (*corpus) {
      auto entries = parse_manifest(io::read_json_file(file));
      auto [summary, ok] = corpus_run(entries);
      if (pretty)
        out << corpus_table(summary);
      else
        out << summary.dump() << '\n';
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    err << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump() << '\n';
    return e.code() == Errc::MalformedInput ? 2 : 1;
  } catch (const json::exception& e) {
    err << json{{"error", "MalformedInput"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace qmg::cli
