#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "aif/fixtures.hpp"

using namespace aif;

namespace {

struct Options {
  std::string file;
  std::vector<std::string> names;
  int radius = -1;
  int budget = -1;
  std::string dot_path;
  std::string json_path;
  bool timing = false;
};

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

Fixture load(const Options& opt) {
  Fixture fx = load_fixture(opt.file);
  if (opt.radius >= 0) fx.budget.radius = opt.radius;
  if (opt.budget >= 0) {
    fx.budget.translate_radius = opt.budget;
    fx.budget.search_radius = opt.budget;
  }
  return fx;
}

void write_json(const Options& opt, const RunReport& rep) {
  if (opt.json_path.empty()) return;
  std::ofstream out(opt.json_path);
  out << rep.to_json() << "\n";
}

int print_report(const Options& opt, RunReport rep,
                 std::chrono::steady_clock::time_point start) {
  if (opt.timing)
    rep.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  for (const auto& c : rep.checks) {
    std::cout << (c.pass ? "[pass] " : c.inconclusive ? "[inconclusive] " : "[FAIL] ") << c.check;
    if (!c.expected.empty()) std::cout << " expected=" << c.expected << " actual=" << c.actual;
    std::cout << " (" << c.source << ")\n";
  }
  write_json(opt, rep);
  return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aiset-forge: almost invariant sets, cubings and regular neighbourhoods at desk scale"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool needs_file = true) {
    if (needs_file) cmd->add_option("file", opt.file, "system description (JSON)")->required();
    cmd->add_option("names", opt.names, "set/subgroup names for the command");
    cmd->add_option("--radius,-r", opt.radius, "evidence ball radius override");
    cmd->add_option("--budget,-b", opt.budget, "translate/search budget override");
    cmd->add_option("--dot", opt.dot_path, "write a DOT file");
    cmd->add_option("--json", opt.json_path, "write the JSON report");
    cmd->add_flag("--timing", opt.timing, "include wall-clock timing in the report");
  };

  auto* c_ends = app.add_subcommand("ends", "coset-growth evidence for the named set");
  add_common(c_ends);
  auto* c_adapted = app.add_subcommand("adapted", "adaptedness of a set to a subgroup");
  add_common(c_adapted);
  auto* c_crossing = app.add_subcommand("crossing", "corners and crossing of two sets");
  add_common(c_crossing);
  auto* c_inumber = app.add_subcommand("inumber", "intersection number of two sets");
  add_common(c_inumber);
  auto* c_cubing = app.add_subcommand("cubing", "Sageev complex of the named family");
  add_common(c_cubing);
  auto* c_ccc = app.add_subcommand("ccc", "cross-connected components of the family");
  add_common(c_ccc);
  auto* c_pretree = app.add_subcommand("pretree", "pretree axioms and discreteness probe");
  add_common(c_pretree);
  auto* c_regnbhd = app.add_subcommand("regnbhd", "algebraic regular neighbourhood of the family");
  add_common(c_regnbhd);
  auto* c_verify = app.add_subcommand("verify", "run the fixture's tagged expectations");
  add_common(c_verify);
  auto* c_fixture = app.add_subcommand("fixture", "summarize a fixture file");
  add_common(c_fixture);

  CLI11_PARSE(app, argc, argv);
  auto start = std::chrono::steady_clock::now();

  return guarded([&]() -> int {
    Fixture fx = load(opt);
    Context ctx(fx.group, fx.budget);
    RunReport rep;
    rep.fixture = fx.name;
    rep.budget = fx.budget;
    auto push = [&rep](std::string check, std::string actual) {
      CheckOutcome c;
      c.check = std::move(check);
      c.actual = std::move(actual);
      c.pass = true;
      c.source = "derived";
      rep.checks.push_back(std::move(c));
    };

    if (*c_verify) {
      rep = run_expectations(fx, ctx);
      return print_report(opt, rep, start);
    }
    if (*c_fixture) {
      rep.command = "fixture";
      push("group", fx.group->name() + " (" + fx.group->kind() + ")");
      push("sets", std::to_string(fx.sets.size()));
      push("subgroups", std::to_string(fx.subgroups.size()));
      push("family", std::to_string(fx.system.family.size()));
      return print_report(opt, rep, start);
    }
    if (*c_ends) {
      rep.command = "ends";
      auto x = fx.set(opt.names.at(0));
      auto t = triviality(ctx, x);
      push("triviality", to_string(t.value) + (t.stabilized ? " (stabilized)" : ""));
      auto cob = coboundary(ctx, x, fx.budget.radius);
      push("coboundary-orbits", std::to_string(cob.orbit_count) +
                                    (cob.stabilized ? " (stabilized)" : " (growing)"));
      return print_report(opt, rep, start);
    }
    if (*c_adapted) {
      rep.command = "adapted";
      auto r = adaptedness(ctx, fx.set(opt.names.at(0)), fx.subgroup(opt.names.at(1)));
      push("adapted", to_string(r.verdict.value));
      push("mixed-double-cosets", std::to_string(r.mixed_double_cosets.size()));
      if (!r.verdict.witness.empty()) push("witness", r.verdict.witness);
      return print_report(opt, rep, start);
    }
    if (*c_crossing) {
      rep.command = "crossing";
      auto r = crossing(ctx, fx.set(opt.names.at(0)), fx.set(opt.names.at(1)));
      push("crossing", to_string(r.verdict.value));
      push("strength", to_string(r.strength));
      for (int s = 0; s < 4; ++s)
        push("corner" + std::to_string(s), to_string(r.report.corner[s].cls));
      return print_report(opt, rep, start);
    }
    if (*c_inumber) {
      rep.command = "inumber";
      auto r = intersection_number(ctx, fx.set(opt.names.at(0)), fx.set(opt.names.at(1)),
                                   fx.budget.search_radius);
      push("count", std::to_string(r.count));
      push("exact", r.exact ? "true" : "false");
      return print_report(opt, rep, start);
    }
    std::vector<AISetPtr> family;
    for (const auto& n : opt.names) family.push_back(fx.set(n));
    auto translates = fx.wall_translates(ctx);
    if (*c_cubing) {
      rep.command = "cubing";
      auto ws = std::make_shared<Wallspace>(collect_walls(ctx, family, translates));
      auto complex = build_complex(ctx, ws);
      push("walls", std::to_string(ws->size()));
      push("vertices", std::to_string(complex.vertex_masks.size()));
      push("edges", std::to_string(complex.edges.size()));
      push("squares", std::to_string(complex.squares.size()));
      if (!opt.dot_path.empty()) {
        std::ofstream out(opt.dot_path);
        emit_dot(out, complex);
      }
      return print_report(opt, rep, start);
    }
    if (*c_ccc) {
      rep.command = "ccc";
      auto ws = std::make_shared<Wallspace>(collect_walls(ctx, family, translates));
      auto cs = compute_cccs(ctx, ws);
      push("walls", std::to_string(ws->size()));
      push("cccs", std::to_string(cs.cccs.size()));
      for (std::size_t i = 0; i < cs.cccs.size() && i < 16; ++i)
        push("ccc" + std::to_string(i), to_string(cs.cccs[i].type) + " size " +
                                            std::to_string(cs.cccs[i].wall_ids.size()));
      return print_report(opt, rep, start);
    }
    if (*c_pretree) {
      rep.command = "pretree";
      auto ws = std::make_shared<Wallspace>(collect_walls(ctx, family, translates));
      auto cccs = std::make_shared<CCCSet>(compute_cccs(ctx, ws));
      Pretree p(cccs);
      std::size_t maxlen = 0;
      for (const auto& t : translates) maxlen = std::max(maxlen, t.size());
      std::vector<Word> smaller;
      for (const auto& t : translates)
        if (t.size() < maxlen) smaller.push_back(t);
      auto ws_small = std::make_shared<Wallspace>(collect_walls(ctx, family, smaller));
      auto cccs_small = std::make_shared<CCCSet>(compute_cccs(ctx, ws_small));
      Pretree ps(cccs_small);
      auto r = pretree_check(p, &ps);
      push("axioms", r.t0 && r.t1 && r.t2 && r.t3 ? "pass" : "fail: " + r.witness);
      push("discrete", to_string(r.discrete.value) + ": " + r.discrete.witness);
      push("max-between", std::to_string(r.max_between));
      return print_report(opt, rep, start);
    }
    if (*c_regnbhd) {
      rep.command = "regnbhd";
      auto rn = build_regular_neighbourhood(ctx, family, translates);
      auto graph = reduce(rn.graph);
      push("notes", rn.notes);
      push("vertices", std::to_string(graph.vertices.size()));
      push("edges", std::to_string(graph.edges.size()));
      push("canonical", graph.canonical_string());
      if (!opt.dot_path.empty()) {
        std::ofstream out(opt.dot_path);
        emit_dot(out, graph);
      }
      return print_report(opt, rep, start);
    }
    return 3;
  });
}
