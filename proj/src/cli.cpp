#include "tredkit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <optional>
#include <random>
#include <sstream>

#include "tredkit/approx.hpp"
#include "tredkit/arborescence.hpp"
#include "tredkit/closure.hpp"
#include "tredkit/errors.hpp"
#include "tredkit/generator.hpp"
#include "tredkit/io.hpp"
#include "tredkit/lp_bounds.hpp"
#include "tredkit/oracle.hpp"
#include "tredkit/synthesis.hpp"

namespace tredkit {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

std::string fmt_ms(double ms) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(3);
  s << ms;
  return s.str();
}

struct Globals {
  std::string format = "edges";
  std::uint64_t seed = 1;
  bool quiet = false;
};

/// Shared state of one invocation.
struct Context {
  Globals globals;
  std::ostream& out;
  std::ostream& err;

  TextFormat format() const {
    auto f = parse_format(globals.format);
    if (!f) throw DomainError("unknown format '" + globals.format + "'");
    return *f;
  }
  bool json() const { return format() == TextFormat::Json; }

  Json header(std::string_view command) const {
    Json j;
    j["schema"] = kJsonSchema;
    j["command"] = command;
    return j;
  }
  void emit(const Json& j) const { out << j.dump(2) << '\n'; }

  /// Writes the listed arcs of g in the text formats; JSON is handled by the
  /// callers since each command wraps the graph differently.
  void emit_graph(const SignedDigraph& g, std::span<const ArcId> arcs) const {
    switch (format()) {
      case TextFormat::Edges: out << to_edge_list(g, arcs, false); break;
      case TextFormat::Tsv: out << to_edge_list(g, arcs, true); break;
      case TextFormat::Dot: out << to_dot(g, arcs); break;
      case TextFormat::Json: emit(graph_json(g, arcs)); break;
    }
  }
  void note(const std::string& line) const {
    if (!globals.quiet) err << line << '\n';
  }
};

struct Loaded {
  SignedDigraph graph;
  std::string digest;
};

Loaded load(const std::string& path) {
  std::string text = read_file(path);
  return {parse_edge_list(text), digest(text)};
}

NodeId node_by_name(const SignedDigraph& g, const std::string& name) {
  if (auto v = g.find_node(name)) return *v;
  throw DomainError("no node named '" + name + "'");
}

// ---- reduce ---------------------------------------------------------------

struct ReduceArgs {
  std::string input;
  std::string algo = "btr";
  bool label_aware = false;
  int c = kDefaultKryC;
  std::size_t budget = kDefaultCycleBudget;
  bool verify_off = false;
};

int cmd_reduce(const Context& ctx, const ReduceArgs& a) {
  auto kind = parse_solver(a.algo);
  if (!kind) throw DomainError("unknown algorithm '" + a.algo + "'");
  Loaded in = load(a.input);
  SolverOptions opts;
  opts.kry_c = a.c;
  opts.cycle_budget = a.budget;
  auto start = Clock::now();
  ReductionResult r = reduce(in.graph, *kind, a.label_aware, opts);
  if (a.verify_off) {
    // The solver's raw proposal, without repair or pruning, re-checked.
    ReductionResult raw = finish_result(in.graph, r.proposal, r.algorithm, r.label_aware);
    raw.proposal = r.proposal;
    raw.augmentation = set_difference(r.augmentation, set_difference(r.augmentation, raw.kept));
    raw.stats.lower_bound = r.stats.lower_bound;
    raw.diagnostics = r.diagnostics;
    r = std::move(raw);
  }
  double ms = elapsed_ms(start);

  if (ctx.json()) {
    Json j = ctx.header("reduce");
    j["input_digest"] = in.digest;
    Json body = result_json(in.graph, r);
    for (auto& [k, v] : body.items()) j[k] = v;
    j["wall_ms"] = ms;
    ctx.emit(j);
  } else {
    ctx.emit_graph(in.graph, r.kept);
  }
  std::string summary = r.algorithm + ": kept " + std::to_string(r.kept.size()) + " of " +
                        std::to_string(in.graph.arc_count()) + ", R " + fmt(r.stats.redundancy);
  if (r.stats.lower_bound) summary += ", lower bound " + std::to_string(*r.stats.lower_bound);
  summary += std::string(", ") + (r.verified ? "verified" : "NOT verified") + ", " + fmt_ms(ms) + " ms";
  ctx.note(summary);
  return r.verified ? kExitOk : kExitVerification;
}

// ---- closure, parity, arborescence ---------------------------------------

int cmd_closure(const Context& ctx, const std::string& input, bool label_blind) {
  Loaded in = load(input);
  const SignedDigraph& g = in.graph;
  ParityClosure c = parity_closure(g);
  if (ctx.json()) {
    Json j = ctx.header("closure");
    j["input_digest"] = in.digest;
    j["label_aware"] = !label_blind;
    Json rows = Json::array();
    for (std::size_t i = 0; i < c.triples().size(); ++i) {
      const ParityTriple& t = c.triples()[i];
      if (label_blind) {
        if (i > 0 && c.triples()[i - 1].from == t.from && c.triples()[i - 1].to == t.to) continue;
        rows.push_back(Json::array({g.name(t.from), g.name(t.to)}));
      } else {
        rows.push_back(Json::array({g.name(t.from), g.name(t.to), std::string(1, sign_char(t.parity))}));
      }
    }
    j["pairs"] = std::move(rows);
    ctx.emit(j);
    return kExitOk;
  }
  const char sep = ctx.format() == TextFormat::Tsv ? '\t' : ' ';
  for (std::size_t i = 0; i < c.triples().size(); ++i) {
    const ParityTriple& t = c.triples()[i];
    if (label_blind) {
      if (i > 0 && c.triples()[i - 1].from == t.from && c.triples()[i - 1].to == t.to) continue;
      ctx.out << g.name(t.from) << sep << g.name(t.to) << '\n';
    } else {
      ctx.out << g.name(t.from) << sep << g.name(t.to) << sep << sign_char(t.parity) << '\n';
    }
  }
  return kExitOk;
}

int cmd_parity(const Context& ctx, const std::string& input) {
  Loaded in = load(input);
  ParityClassification c = classify_parity(in.graph);
  if (ctx.json()) {
    Json j = ctx.header("parity");
    j["input_digest"] = in.digest;
    j["class"] = c.kind == ParityClass::Single ? "single" : "double";
    j["witness"] = c.witness ? Json(in.graph.name(*c.witness)) : Json(nullptr);
    ctx.emit(j);
  } else if (c.kind == ParityClass::Single) {
    ctx.out << "single\n";
  } else {
    ctx.out << "double witness " << in.graph.name(*c.witness) << '\n';
  }
  return kExitOk;
}

int cmd_arborescence(const Context& ctx, const std::string& input, const std::string& root_name, bool in_tree) {
  Loaded in = load(input);
  const SignedDigraph& g = in.graph;
  if (g.node_count() == 0) throw EmptyGraph();
  NodeId root = root_name.empty() ? 0 : node_by_name(g, root_name);
  Arborescence t = in_tree ? min_in_arborescence(g, root) : min_out_arborescence(g, root);
  ArcSet arcs = t.arcs();
  if (ctx.json()) {
    Json j = ctx.header("arborescence");
    j["input_digest"] = in.digest;
    j["root"] = g.name(root);
    j["orientation"] = in_tree ? "in" : "out";
    j["weight"] = t.total_weight.to_string();
    j["graph"] = graph_json(g, arcs);
    ctx.emit(j);
  } else {
    ctx.emit_graph(g, arcs);
  }
  ctx.note("weight " + t.total_weight.to_string());
  return kExitOk;
}

// ---- lp, oracle ----------------------------------------------------------

int cmd_lp(const Context& ctx, const std::string& input, const std::string& variant_text,
           const std::string& root_name, bool gap) {
  auto kind = parse_variant(variant_text);
  if (!kind) throw DomainError("unknown LP variant '" + variant_text + "'");
  Loaded in = load(input);
  const SignedDigraph& g = in.graph;
  LpVariant v{*kind, 0};
  if (*kind == LpVariant::RootedArborescence && !root_name.empty()) v.root = node_by_name(g, root_name);
  LpSolution s = solve_lp_small(g, v);
  std::optional<Rational> ratio;
  if (gap) ratio = integrality_gap(g, v);
  if (ctx.json()) {
    Json j = ctx.header("lp");
    j["input_digest"] = in.digest;
    j["variant"] = variant_name(*kind);
    j["objective"] = s.objective.get_str();
    j["integral"] = s.integral;
    if (ratio) j["gap"] = ratio->get_str();
    Json x = Json::array();
    for (ArcId a = 0; a < g.arc_count(); ++a) {
      Json e = arc_json(g, a);
      e["x"] = s.x[a].get_str();
      x.push_back(std::move(e));
    }
    j["x"] = std::move(x);
    ctx.emit(j);
  } else {
    ctx.out << "objective " << s.objective.get_str() << '\n';
    ctx.out << "integral " << (s.integral ? "true" : "false") << '\n';
    if (ratio) ctx.out << "gap " << ratio->get_str() << '\n';
  }
  return kExitOk;
}

int cmd_oracle(const Context& ctx, const std::string& input, bool label_aware, bool weighted) {
  Loaded in = load(input);
  ReductionResult r = exact_min(in.graph, label_aware, weighted);
  if (ctx.json()) {
    Json j = ctx.header("oracle");
    j["input_digest"] = in.digest;
    Json body = result_json(in.graph, r);
    for (auto& [k, v] : body.items()) j[k] = v;
    ctx.emit(j);
  } else {
    ctx.emit_graph(in.graph, r.kept);
  }
  ctx.note("optimum kept " + std::to_string(r.kept.size()) + ", weight " + r.kept_weight.to_string());
  return r.verified ? kExitOk : kExitVerification;
}

// ---- synth, redundancy ---------------------------------------------------

int cmd_synth(const Context& ctx, const std::string& input) {
  std::string text = read_file(input);
  auto start = Clock::now();
  SynthesisResult s = synthesize(text);
  double ms = elapsed_ms(start);
  for (const std::string& w : s.evidence.warnings) ctx.err << "warning: " << w << '\n';
  const SignedDigraph& net = s.network;
  ArcSet all = net.all_arcs();
  if (ctx.json()) {
    Json j = ctx.header("synth");
    j["input_digest"] = digest(text);
    j["evidence_arcs"] = s.evidence.graph.arc_count();
    Json graph = graph_json(net, all);
    j["nodes"] = graph["nodes"];
    j["arcs"] = graph["arcs"];
    j["pseudonodes"] = s.pseudonodes;
    j["R"] = s.redundancy;
    j["verified"] = s.verified;
    j["algorithm"] = s.reduction.algorithm;
    j["wall_ms"] = ms;
    ctx.emit(j);
  } else {
    ctx.emit_graph(net, all);
  }
  ctx.note("synth: " + std::to_string(s.evidence.graph.arc_count()) + " evidence arcs -> " +
           std::to_string(net.arc_count()) + ", " + std::to_string(s.pseudonodes.size()) + " pseudonodes, R " +
           fmt(s.redundancy) + ", " + (s.verified ? "verified" : "NOT verified") + ", " + fmt_ms(ms) + " ms");
  return s.verified ? kExitOk : kExitVerification;
}

int cmd_redundancy(const Context& ctx, const std::string& input, bool exact) {
  Loaded in = load(input);
  RedundancyReport r = redundancy(in.graph, exact);
  if (ctx.json()) {
    Json j = ctx.header("redundancy");
    j["input_digest"] = in.digest;
    j["R"] = r.value;
    j["kept"] = r.reduction.kept.size();
    j["total"] = in.graph.arc_count();
    j["exact"] = exact;
    j["algorithm"] = r.reduction.algorithm;
    j["verified"] = r.reduction.verified;
    ctx.emit(j);
  } else {
    ctx.out << "R " << fmt(r.value) << '\n';
  }
  return r.reduction.verified ? kExitOk : kExitVerification;
}

// ---- bench, generate -----------------------------------------------------

struct BenchArgs {
  std::size_t n = 100;
  std::size_t m = 500;
  std::string algos = "fj,critical2,kry,maxed2,btr";
  std::size_t repeats = 1;
  std::size_t instances = 1;
  double negative = 0.2;
  double critical = 0.1;
};

std::vector<SolverKind> parse_solver_list(const std::string& list) {
  std::vector<SolverKind> out;
  std::stringstream s(list);
  std::string item;
  while (std::getline(s, item, ',')) {
    auto k = parse_solver(item);
    if (!k) throw DomainError("unknown algorithm '" + item + "'");
    out.push_back(*k);
  }
  if (out.empty()) throw DomainError("no algorithms given");
  return out;
}

int cmd_bench(const Context& ctx, const BenchArgs& a) {
  if (a.n == 0 || a.m == 0 || a.repeats == 0 || a.instances == 0)
    throw DomainError("bench parameters must be positive");
  std::vector<SolverKind> algos = parse_solver_list(a.algos);
  std::mt19937_64 master(ctx.globals.seed);
  ctx.out << "instance,algo,n,m,kept,lower_bound,ratio_vs_best_bound,verified,wall_ms\n";
  bool all_verified = true;
  for (std::size_t i = 0; i < a.instances; ++i) {
    GeneratorOptions o;
    o.nodes = a.n;
    o.arcs = a.m;
    o.negative_fraction = a.negative;
    o.critical_fraction = a.critical;
    o.seed = master();
    SignedDigraph g = random_strongly_connected(o);
    // The label-blind bound is valid for every variant.
    const std::size_t bound = std::max<std::size_t>(1, pipeline_lower_bound(g, false));
    for (SolverKind k : algos) {
      std::optional<ReductionResult> r;
      double best_ms = 0;
      for (std::size_t rep = 0; rep < a.repeats; ++rep) {
        auto start = Clock::now();
        try {
          r = reduce(g, k, false);
        } catch (const CycleSearchBudgetExceeded&) {
          r.reset();
        }
        double ms = elapsed_ms(start);
        best_ms = rep == 0 ? ms : std::min(best_ms, ms);
      }
      ctx.out << i << ',' << solver_name(k) << ',' << g.node_count() << ',' << g.arc_count() << ',';
      if (!r) {
        ctx.out << "NA,NA,NA,false," << fmt_ms(best_ms) << '\n';
        ctx.note("instance " + std::to_string(i) + ": " + std::string(solver_name(k)) + " exceeded its search budget");
        continue;
      }
      all_verified = all_verified && r->verified;
      ctx.out << r->kept.size() << ',' << (r->stats.lower_bound ? std::to_string(*r->stats.lower_bound) : "NA") << ','
              << fmt(static_cast<double>(r->kept.size()) / static_cast<double>(bound)) << ','
              << (r->verified ? "true" : "false") << ',' << fmt_ms(best_ms) << '\n';
    }
  }
  return all_verified ? kExitOk : kExitVerification;
}

struct GenerateArgs {
  std::string kind = "strong";
  std::size_t n = 100;
  std::size_t m = 500;
  std::size_t lines = 140;
  double negative = 0.2;
  double critical = 0.1;
};

int cmd_generate(const Context& ctx, const GenerateArgs& a) {
  if (a.kind == "evidence") {
    std::string text = synthetic_evidence(a.lines, ctx.globals.seed);
    if (ctx.json()) {
      Json j = ctx.header("generate");
      j["kind"] = a.kind;
      j["seed"] = ctx.globals.seed;
      j["text"] = text;
      ctx.emit(j);
    } else {
      ctx.out << text;
    }
    return kExitOk;
  }
  GeneratorOptions o;
  o.nodes = a.n;
  o.arcs = a.m;
  o.negative_fraction = a.negative;
  o.critical_fraction = a.critical;
  o.seed = ctx.globals.seed;
  SignedDigraph g;
  if (a.kind == "strong")
    g = random_strongly_connected(o);
  else if (a.kind == "general")
    g = random_digraph(o);
  else
    throw DomainError("unknown kind '" + a.kind + "'");
  if (ctx.json()) {
    Json j = ctx.header("generate");
    j["kind"] = a.kind;
    j["seed"] = ctx.globals.seed;
    j["graph"] = graph_json(g, g.all_arcs());
    ctx.emit(j);
  } else {
    ctx.emit_graph(g, g.all_arcs());
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{{}, out, err};
  CLI::App app{"Transitive reduction of signed directed graphs", "tredkit"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", ctx.globals.format, "Output format: edges, tsv, dot, json")
      ->check(CLI::IsMember({"edges", "tsv", "dot", "json"}));
  app.add_option("--seed", ctx.globals.seed, "Seed for generated instances");
  app.add_flag("--quiet", ctx.globals.quiet, "Suppress the summary on standard error");

  std::function<int()> action;

  ReduceArgs ra;
  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a graph and verify the result");
  reduce_cmd->add_option("input", ra.input, "Edge-list file")->required();
  reduce_cmd->add_option("--algo", ra.algo, "dag, fj, critical2, kry, maxed2 or btr");
  reduce_cmd->add_flag("--label-aware", ra.label_aware, "Preserve walk parities");
  reduce_cmd->add_option("--c", ra.c, "Largest cycle length contracted by kry");
  reduce_cmd->add_option("--budget", ra.budget, "Node expansions per kry cycle search");
  reduce_cmd->add_flag("--verify-off", ra.verify_off, "Emit the raw solver output without repair");
  reduce_cmd->callback([&] { action = [&] { return cmd_reduce(ctx, ra); }; });

  std::string input, root;
  bool flag_a = false, flag_b = false;

  auto* closure_cmd = app.add_subcommand("closure", "List the parity closure");
  closure_cmd->add_option("input", input)->required();
  closure_cmd->add_flag("--label-blind", flag_a, "Plain reachability pairs");
  closure_cmd->callback([&] { action = [&] { return cmd_closure(ctx, input, flag_a); }; });

  auto* parity_cmd = app.add_subcommand("parity", "Classify a strongly connected graph");
  parity_cmd->add_option("input", input)->required();
  parity_cmd->callback([&] { action = [&] { return cmd_parity(ctx, input); }; });

  auto* arb_cmd = app.add_subcommand("arborescence", "Minimum spanning arborescence");
  arb_cmd->add_option("input", input)->required();
  arb_cmd->add_option("--root", root, "Root node name (default: first node)");
  arb_cmd->add_flag("--in", flag_a, "In-arborescence instead of out");
  arb_cmd->callback([&] { action = [&] { return cmd_arborescence(ctx, input, root, flag_a); }; });

  std::string variant = "min-ed";
  auto* lp_cmd = app.add_subcommand("lp", "Solve the cut LP of a small graph");
  lp_cmd->add_option("input", input)->required();
  lp_cmd->add_option("--variant", variant, "min-ed, critical-min-ed or arborescence");
  lp_cmd->add_option("--root", root, "Root for the arborescence variant");
  lp_cmd->add_flag("--gap", flag_a, "Also report the integrality gap");
  lp_cmd->callback([&] { action = [&] { return cmd_lp(ctx, input, variant, root, flag_a); }; });

  auto* oracle_cmd = app.add_subcommand("oracle", "Exact optimum by enumeration");
  oracle_cmd->add_option("input", input)->required();
  oracle_cmd->add_flag("--label-aware", flag_a, "Preserve walk parities");
  oracle_cmd->add_flag("--weighted", flag_b, "Minimize total weight");
  oracle_cmd->callback([&] { action = [&] { return cmd_oracle(ctx, input, flag_a, flag_b); }; });

  auto* synth_cmd = app.add_subcommand("synth", "Synthesize a network from evidence statements");
  synth_cmd->add_option("input", input)->required();
  synth_cmd->callback([&] { action = [&] { return cmd_synth(ctx, input); }; });

  auto* red_cmd = app.add_subcommand("redundancy", "Redundancy R = 1 - kept / total");
  red_cmd->add_option("input", input)->required();
  red_cmd->add_flag("--exact", flag_a, "Use the exact oracle");
  red_cmd->callback([&] { action = [&] { return cmd_redundancy(ctx, input, flag_a); }; });

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Run solvers on generated instances, CSV output");
  bench_cmd->add_option("--n", ba.n, "Nodes per instance");
  bench_cmd->add_option("--m", ba.m, "Arcs per instance");
  bench_cmd->add_option("--algos", ba.algos, "Comma-separated algorithms");
  bench_cmd->add_option("--repeats", ba.repeats, "Timed runs per algorithm (minimum reported)");
  bench_cmd->add_option("--instances", ba.instances, "Number of instances");
  bench_cmd->add_option("--negative", ba.negative, "Fraction of inhibitory arcs");
  bench_cmd->add_option("--critical", ba.critical, "Fraction of critical arcs");
  bench_cmd->callback([&] { action = [&] { return cmd_bench(ctx, ba); }; });

  GenerateArgs ga;
  auto* gen_cmd = app.add_subcommand("generate", "Write a random graph or evidence file");
  gen_cmd->add_option("--kind", ga.kind, "strong, general or evidence")
      ->check(CLI::IsMember({"strong", "general", "evidence"}));
  gen_cmd->add_option("--n", ga.n, "Nodes");
  gen_cmd->add_option("--m", ga.m, "Arcs");
  gen_cmd->add_option("--lines", ga.lines, "Evidence statements");
  gen_cmd->add_option("--negative", ga.negative, "Fraction of inhibitory arcs");
  gen_cmd->add_option("--critical", ga.critical, "Fraction of critical arcs");
  gen_cmd->callback([&] { action = [&] { return cmd_generate(ctx, ga); }; });

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("tredkit");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInput;
  }

  try {
    return action ? action() : kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitInput;
  }
}

}  // namespace tredkit
