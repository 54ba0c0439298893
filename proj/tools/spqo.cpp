// Command-line front end: one subcommand per application, JSON on stdout,
// diagnostics on stderr.

#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "spqo/embedding.hpp"
#include "spqo/errors.hpp"
#include "spqo/generators.hpp"
#include "spqo/interval.hpp"
#include "spqo/io.hpp"
#include "spqo/oracle.hpp"
#include "spqo/solver.hpp"

using namespace spqo;

namespace {

enum Exit { kFeasible = 0, kInfeasible = 1, kNotSupported = 2, kInputError = 3, kCheckFailed = 4 };

struct Options {
  bool oracle = false;
  bool verify = false;
  std::string format = "json";
  std::string output;
  std::uint64_t seed = 1;
};

struct Outcome {
  Json doc;
  SolveStatus status = SolveStatus::Feasible;
  std::string reason;
  bool checkFailed = false;
};

void set_status(Outcome& out, SolveStatus s, const std::string& reason) {
  out.status = s;
  out.reason = reason;
  out.doc["status"] = to_string(s);
  if (s != SolveStatus::Feasible) out.doc["reason"] = reason;
}

void check(Outcome& out, bool ok, const std::string& what) {
  if (ok) return;
  out.checkFailed = true;
  std::cerr << "check failed: " << what << "\n";
}

// Runs an oracle, reporting a budget overrun instead of failing.
template <class F>
void with_oracle(const Options& opt, Outcome& out, F&& f) {
  if (!opt.oracle) return;
  try {
    bool agrees = f();
    check(out, agrees, "oracle disagrees with the decision");
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    std::cerr << "oracle skipped: " << e.what() << "\n";
  }
}

Outcome run_solve(const Options& opt, const std::string& path) {
  const Instance d = instance_from_json(read_json_file(path));
  const auto res = solve(d);
  Outcome out;
  out.doc = solve_result_to_json(res);
  out.doc["twoFixed"] = res.twoFixed;
  out.status = res.status;
  out.reason = res.status == SolveStatus::Infeasible ? to_string(res.reason) : res.message;
  if (opt.verify && res.status == SolveStatus::Feasible) check(out, verify_solution(d, res.solution), "solution");
  if (res.status != SolveStatus::NotSupported)
    with_oracle(opt, out, [&] { return brute_force_simultaneous_orders(d).has_value() == (res.status == SolveStatus::Feasible); });
  return out;
}

Outcome run_planarity(const Options& opt, const std::string& graphPath, const std::string& consPath) {
  const Graph g = parse_edge_list_file(graphPath);
  std::map<int, PQTree> cons;
  if (!consPath.empty()) cons = constraints_from_json(read_json_file(consPath), g);
  const auto res = solve_partially_pq_constrained(g, cons);
  Outcome out;
  set_status(out, res.status, res.reason);
  out.doc["twoFixed"] = res.twoFixed;
  if (res.status == SolveStatus::Feasible) out.doc["rotation"] = rotation_to_json(g, res.rotation);
  if (opt.verify && res.status == SolveStatus::Feasible) {
    check(out, is_planar_rotation(g, res.rotation), "Euler face count");
    for (const auto& [v, t] : cons) {
      std::vector<Label> seq;
      for (int e : res.rotation[static_cast<std::size_t>(v)])
        if (t.leaf_index(edge_label(e)) >= 0) seq.push_back(edge_label(e));
      check(out, represents(t, CircularOrder(seq)), "constraint at " + g.names[static_cast<std::size_t>(v)]);
    }
  }
  if (res.status != SolveStatus::NotSupported)
    with_oracle(opt, out, [&] { return brute_force_pq_constrained(g, cons).has_value() == (res.status == SolveStatus::Feasible); });
  return out;
}

Outcome run_sefe(const Options& opt, const std::string& p1, const std::string& p2) {
  const Graph g1 = parse_edge_list_file(p1), g2 = parse_edge_list_file(p2);
  const auto res = solve_sefe(g1, g2);
  Outcome out;
  set_status(out, res.status, res.reason);
  out.doc["twoFixed"] = res.twoFixed;
  if (res.status == SolveStatus::Feasible) {
    out.doc["first"] = rotation_to_json(g1, res.first);
    out.doc["second"] = rotation_to_json(g2, res.second);
    if (opt.verify) check(out, verify_sefe(g1, g2, res.first, res.second), "simultaneous embedding");
  }
  if (res.status != SolveStatus::NotSupported)
    with_oracle(opt, out, [&] { return brute_force_sefe(g1, g2).has_value() == (res.status == SolveStatus::Feasible); });
  return out;
}

Outcome run_interval(const Options& opt, const std::string& path) {
  const Graph g = parse_edge_list_file(path);
  const auto rep = recognize_interval(g);
  Outcome out;
  if (rep) {
    set_status(out, SolveStatus::Feasible, "");
    out.doc["representation"] = interval_rep_to_json(*rep);
    if (opt.verify) check(out, represents_graph(g, *rep), "intersection graph");
  } else {
    set_status(out, SolveStatus::Infeasible, maximal_cliques(g) ? "NullTree" : "NotChordal");
  }
  with_oracle(opt, out, [&] { return brute_force_interval(g).has_value() == rep.has_value(); });
  return out;
}

Outcome run_interval_sim(const Options& opt, const std::string& p1, const std::string& p2) {
  const Graph g1 = parse_edge_list_file(p1), g2 = parse_edge_list_file(p2);
  const auto res = simultaneous_interval(g1, g2);
  Outcome out;
  set_status(out, res.status, res.reason);
  if (res.status == SolveStatus::Feasible) {
    out.doc["first"] = interval_rep_to_json(res.first);
    out.doc["second"] = interval_rep_to_json(res.second);
    if (opt.verify) {
      check(out, represents_graph(g1, res.first) && represents_graph(g2, res.second), "intersection graphs");
      for (const auto& [name, iv] : res.first)
        if (res.second.count(name)) check(out, res.second.at(name) == iv, "shared interval of " + name);
    }
  }
  if (res.status != SolveStatus::NotSupported)
    with_oracle(opt, out, [&] {
      return brute_force_simultaneous_interval(g1, g2).has_value() == (res.status == SolveStatus::Feasible);
    });
  return out;
}

Outcome run_interval_extend(const Options& opt, const std::string& graphPath, const std::string& repPath) {
  const Graph g = parse_edge_list_file(graphPath);
  const IntervalRep pre = interval_rep_from_json(read_json_file(repPath));
  const auto res = extend_partial_interval(g, pre);
  Outcome out;
  set_status(out, res.status, res.reason);
  if (res.status == SolveStatus::Feasible) {
    out.doc["representation"] = interval_rep_to_json(res.representation);
    if (opt.verify) {
      check(out, represents_graph(g, res.representation), "intersection graph");
      for (const auto& [name, iv] : pre) check(out, res.representation.at(name) == iv, "prescribed interval of " + name);
    }
  }
  if (res.status != SolveStatus::NotSupported)
    with_oracle(opt, out, [&] { return brute_force_interval_extension(g, pre) == (res.status == SolveStatus::Feasible); });
  return out;
}

Outcome run_from_cyclic(const Options& opt, const std::string& path) {
  const auto in = cyclic_ordering_from_json(read_json_file(path));
  const Instance d = reduce_cyclic_ordering(in.leaves, in.triples);
  Outcome out;
  out.doc = instance_to_json(d);
  if (opt.verify) check(out, instance_from_json(out.doc).trees == d.trees, "instance round trip");
  with_oracle(opt, out, [&] {
    const auto res = solve(d);
    if (res.status == SolveStatus::NotSupported) {
      std::cerr << "solver: " << res.message << "\n";
      return true;
    }
    return brute_force_cyclic_ordering(in.leaves, in.triples).has_value() == (res.status == SolveStatus::Feasible);
  });
  return out;
}

Outcome run_generate(const Options& opt, const std::string& kind) {
  std::mt19937_64 rng(opt.seed);
  Outcome out;
  if (kind == "instance") {
    auto d = random_two_fixed_instance(rng);
    if (!d) throw Error(ErrorCode::BudgetExceeded, "no 2-fixed instance within the attempt limit");
    out.doc = instance_to_json(*d);
  } else if (kind == "cyclic") {
    std::vector<Label> leaves{"a", "b", "c", "d", "e", "f"};
    Json j;
    j["leaves"] = leaves;
    j["triples"] = Json::array();
    for (const auto& t : random_triples(rng, leaves, 1 + static_cast<int>(rng() % 5)))
      j["triples"].push_back({t[0], t[1], t[2]});
    out.doc = std::move(j);
  } else if (kind == "interval") {
    std::vector<std::string> names;
    for (int v = 0; v < 6; ++v) names.push_back("v" + std::to_string(v));
    out.doc = interval_rep_to_json(random_intervals(rng, names));
  } else {
    throw Error(ErrorCode::InputError, "unknown generator " + kind + " (instance, cyclic, interval)");
  }
  return out;
}

int exit_code(const Outcome& out) {
  if (out.checkFailed) return kCheckFailed;
  switch (out.status) {
    case SolveStatus::Feasible:
      return kFeasible;
    case SolveStatus::Infeasible:
      std::cerr << "infeasible: " << out.reason << "\n";
      return kInfeasible;
    case SolveStatus::NotSupported:
      std::cerr << "not supported: " << out.reason << "\n";
      return kNotSupported;
  }
  return kInputError;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::NotOneCritical:
    case ErrorCode::NotSupported:
    case ErrorCode::NotBiconnected:
    case ErrorCode::BudgetExceeded:
    case ErrorCode::TooLarge:
      return kNotSupported;
    case ErrorCode::NotPlanar:
      return kInfeasible;
    case ErrorCode::InternalInconsistency:
    case ErrorCode::PlanarityCheckFailed:
      return kCheckFailed;
    default:
      return kInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simultaneous PQ-ordering solver and its graph applications"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--oracle", opt.oracle, "cross-check the decision against exhaustive search");
  app.add_flag("--verify", opt.verify, "re-check the result independently; exit 4 on failure");
  app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json"}));
  app.add_option("-o,--output", opt.output, "write the result here instead of stdout");
  app.add_option("--seed", opt.seed, "seed for generator subcommands");

  std::string a, b;
  std::function<Outcome()> job;
  auto* solveCmd = app.add_subcommand("solve", "instance JSON -> solution JSON");
  solveCmd->add_option("instance", a)->required()->check(CLI::ExistingFile);
  solveCmd->callback([&] { job = [&] { return run_solve(opt, a); }; });

  auto* planCmd = app.add_subcommand("planarity-pq", "edge list + constraint trees -> rotation system");
  planCmd->add_option("graph", a)->required()->check(CLI::ExistingFile);
  planCmd->add_option("constraints", b, "JSON trees keyed by vertex")->check(CLI::ExistingFile);
  planCmd->callback([&] { job = [&] { return run_planarity(opt, a, b); }; });

  auto* sefeCmd = app.add_subcommand("sefe", "two edge lists -> two rotation systems");
  sefeCmd->add_option("first", a)->required()->check(CLI::ExistingFile);
  sefeCmd->add_option("second", b)->required()->check(CLI::ExistingFile);
  sefeCmd->callback([&] { job = [&] { return run_sefe(opt, a, b); }; });

  auto* ivCmd = app.add_subcommand("interval", "edge list -> interval representation");
  ivCmd->add_option("graph", a)->required()->check(CLI::ExistingFile);
  ivCmd->callback([&] { job = [&] { return run_interval(opt, a); }; });

  auto* simCmd = app.add_subcommand("interval-sim", "two edge lists -> simultaneous representations");
  simCmd->add_option("first", a)->required()->check(CLI::ExistingFile);
  simCmd->add_option("second", b)->required()->check(CLI::ExistingFile);
  simCmd->callback([&] { job = [&] { return run_interval_sim(opt, a, b); }; });

  auto* extCmd = app.add_subcommand("interval-extend", "edge list + partial representation -> representation");
  extCmd->add_option("graph", a)->required()->check(CLI::ExistingFile);
  extCmd->add_option("representation", b)->required()->check(CLI::ExistingFile);
  extCmd->callback([&] { job = [&] { return run_interval_extend(opt, a, b); }; });

  auto* cycCmd = app.add_subcommand("from-cyclic", "cyclic ordering triples -> instance JSON");
  cycCmd->add_option("triples", a)->required()->check(CLI::ExistingFile);
  cycCmd->callback([&] { job = [&] { return run_from_cyclic(opt, a); }; });

  auto* genCmd = app.add_subcommand("generate", "seeded random input: instance, cyclic or interval");
  genCmd->add_option("kind", a)->required();
  genCmd->callback([&] { job = [&] { return run_generate(opt, a); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }
  try {
    Outcome out = job();
    const std::string text = out.doc.dump(2) + "\n";
    if (opt.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream file(opt.output);
      if (!file) throw Error(ErrorCode::InputError, "cannot write " + opt.output);
      file << text;
    }
    return exit_code(out);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "InputError: " << e.what() << "\n";
    return kInputError;
  }
}
