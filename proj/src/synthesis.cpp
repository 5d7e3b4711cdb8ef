#include "tredkit/synthesis.hpp"

#include <map>
#include <set>
#include <tuple>

#include "tredkit/closure.hpp"
#include "tredkit/errors.hpp"
#include "tredkit/oracle.hpp"

namespace tredkit {

namespace {

ArcSet from_mask(const std::vector<char>& mask) {
  ArcSet out;
  for (ArcId a = 0; a < mask.size(); ++a)
    if (mask[a]) out.push_back(a);
  return out;
}

struct Outer {
  std::string_view token;
  EvidenceKind kind;
  Sign sign;
};

constexpr Outer kOuterOps[] = {
    {"=>", EvidenceKind::DoubleCausal, Sign::Pos},   {"=|", EvidenceKind::DoubleCausal, Sign::Neg},
    {"=cat=>", EvidenceKind::Catalytic, Sign::Pos},  {"=cat|", EvidenceKind::Catalytic, Sign::Neg},
    {"=up=>", EvidenceKind::UpstreamDirect, Sign::Pos}, {"=up|", EvidenceKind::UpstreamDirect, Sign::Neg},
};

std::optional<Sign> inner_op(std::string_view t) {
  if (t == "->") return Sign::Pos;
  if (t == "-|") return Sign::Neg;
  return std::nullopt;
}

const Outer* outer_op(std::string_view t) {
  for (const auto& o : kOuterOps)
    if (o.token == t) return &o;
  return nullptr;
}

/// Whitespace-separated tokens with parentheses split off.
std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (c == '(' || c == ')') {
      out.push_back(line.substr(i, 1));
      ++i;
    } else {
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' && line[j] != '(' &&
             line[j] != ')')
        ++j;
      out.push_back(line.substr(i, j - i));
      i = j;
    }
  }
  return out;
}

void check_name(std::string_view t, std::size_t line, const char* role) {
  if (t == "(" || t == ")" || inner_op(t) || outer_op(t))
    throw ParseError(line, std::string("expected ") + role + " name, got '" + std::string(t) + "'");
}

Evidence parse_line(const std::vector<std::string_view>& tok, std::size_t line) {
  Evidence e;
  e.line = line;
  if (tok.size() >= 2 && inner_op(tok[1])) {
    check_name(tok[0], line, "source");
    if (tok.size() == 2) throw ParseError(line, "missing target");
    check_name(tok[2], line, "target");
    if (tok.size() > 3) throw ParseError(line, "unexpected '" + std::string(tok[3]) + "' after target");
    e.source = tok[0];
    e.target = tok[2];
    e.sign_inner = *inner_op(tok[1]);
    return e;
  }
  if (tok.size() >= 2 && outer_op(tok[1])) {
    const Outer* op = outer_op(tok[1]);
    check_name(tok[0], line, "actor");
    if (tok.size() < 3 || tok[2] != "(") throw ParseError(line, "expected '(' after " + std::string(op->token));
    if (tok.size() < 4) throw ParseError(line, "missing source");
    check_name(tok[3], line, "source");
    if (tok.size() < 5 || !inner_op(tok[4])) throw ParseError(line, "expected -> or -| inside parentheses");
    if (tok.size() < 6 || tok[5] == ")") throw ParseError(line, "missing target");
    check_name(tok[5], line, "target");
    if (tok.size() < 7 || tok[6] != ")") throw ParseError(line, "missing ')'");
    if (tok.size() > 7) throw ParseError(line, "unexpected '" + std::string(tok[7]) + "' after ')'");
    if (tok[3] == tok[5]) throw ParseError(line, "source and target must differ");
    e.kind = op->kind;
    e.actor = tok[0];
    e.source = tok[3];
    e.target = tok[5];
    e.sign_outer = op->sign;
    e.sign_inner = *inner_op(tok[4]);
    return e;
  }
  if (tok.size() == 1) throw ParseError(line, "missing operator");
  throw ParseError(line, "unknown operator '" + std::string(tok[1]) + "'");
}

}  // namespace

std::vector<Evidence> parse_evidence(std::string_view text) {
  std::vector<Evidence> out;
  std::set<std::tuple<int, std::string, std::string, std::string, int, int>> seen;
  std::size_t line_no = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    Evidence e = parse_line(tok, line_no);
    if (seen.emplace(static_cast<int>(e.kind), e.actor, e.source, e.target, to_int(e.sign_outer), to_int(e.sign_inner))
            .second)
      out.push_back(std::move(e));
  }
  return out;
}

EvidenceGraph build_graph(const std::vector<Evidence>& evidence) {
  SignedDigraph::Builder b;
  for (const Evidence& e : evidence) {
    if (e.kind != EvidenceKind::Direct) b.add_node(e.actor);
    b.add_node(e.source);
    b.add_node(e.target);
  }
  auto id = [&](const std::string& name) { return *b.find_node(name); };

  EvidenceGraph out;
  std::set<std::tuple<NodeId, NodeId, int>> critical;
  auto add_critical = [&](NodeId u, NodeId v, Sign s) {
    b.add_arc(u, v, s, kUnitWeight, true);
    critical.insert({u, v, to_int(s)});
  };
  std::size_t next_pseudo = 1;
  for (std::size_t i = 0; i < evidence.size(); ++i) {
    const Evidence& e = evidence[i];
    NodeId a = id(e.source), t = id(e.target);
    switch (e.kind) {
      case EvidenceKind::Direct:
        add_critical(a, t, e.sign_inner);
        break;
      case EvidenceKind::Catalytic:
        add_critical(a, t, e.sign_inner);
        add_critical(id(e.actor), t, e.sign_outer);
        break;
      case EvidenceKind::UpstreamDirect:
        add_critical(a, t, e.sign_inner);
        add_critical(id(e.actor), a, e.sign_outer);
        break;
      case EvidenceKind::DoubleCausal: {
        std::string name;
        do name = "P" + std::to_string(next_pseudo++);
        while (b.find_node(name));
        NodeId p = b.add_node(name);
        b.add_arc(a, p, Sign::Pos);
        b.add_arc(p, t, e.sign_inner);
        b.add_arc(id(e.actor), p, e.sign_outer);
        out.pseudonodes.push_back({p, i});
        break;
      }
    }
  }
  out.graph = std::move(b).build();
  for (const auto& [u, v, s] : critical)
    if (s == 1 && critical.count({u, v, -1}))
      out.warnings.push_back("conflicting reports: " + out.graph.name(u) + " both promotes and inhibits " +
                             out.graph.name(v));
  return out;
}

ReductionResult best_btr(const SignedDigraph& g, const SolverOptions& opts) {
  std::vector<SolverKind> kinds{SolverKind::Critical2, SolverKind::MaxEd2};
  if (g.node_count() <= kBestOfKryNodeLimit) kinds.push_back(SolverKind::Kry);
  std::optional<ReductionResult> best;
  for (SolverKind k : kinds) {
    SolverOptions o = opts;
    o.scc_solver = k;
    ReductionResult r;
    try {
      r = min_btr(g, o);
    } catch (const CycleSearchBudgetExceeded&) {
      continue;
    }
    if (!best || r.kept.size() < best->kept.size()) best = std::move(r);
  }
  return std::move(*best);
}

SynthesisResult synthesize(std::string_view text, const SolverOptions& opts) {
  SynthesisResult s;
  s.evidence = build_graph(parse_evidence(text));
  const SignedDigraph& g = s.evidence.graph;
  s.reduction = best_btr(g, opts);

  // Collapse pseudonodes whose pass-through relations (in-arc, out-arc pairs
  // with their parity) all have a replacement walk avoiding the pseudonode.
  std::vector<char> mask(g.arc_count(), 0), drop(g.node_count(), 0);
  for (ArcId a : s.reduction.kept) mask[a] = 1;
  ReachProbe probe(g);
  for (const PseudoNode& p : s.evidence.pseudonodes) {
    std::vector<ArcId> ins, outs;
    for (ArcId a : g.in_arcs(p.id))
      if (mask[a]) ins.push_back(a);
    for (ArcId a : g.out_arcs(p.id))
      if (mask[a]) outs.push_back(a);
    std::vector<char> without = mask;
    for (ArcId a : ins) without[a] = 0;
    for (ArcId a : outs) without[a] = 0;
    bool replaceable = true;
    for (ArcId a : ins)
      for (ArcId b : outs)
        replaceable = replaceable && probe.reachable(g.arc(a).src, g.arc(b).dst, g.arc(a).label * g.arc(b).label,
                                                     true, without);
    if (!replaceable) {
      s.pseudonodes.push_back(g.name(p.id));
      continue;
    }
    drop[p.id] = 1;
    mask = std::move(without);
  }

  SignedDigraph::Builder b;
  std::vector<NodeId> map(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (!drop[v]) map[v] = b.add_node(g.name(v));
  std::size_t kept = 0;
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    if (!mask[a]) continue;
    Arc arc = g.arc(a);
    arc.src = map[arc.src];
    arc.dst = map[arc.dst];
    b.add_arc(arc);
    ++kept;
  }
  s.network = std::move(b).build();
  s.redundancy = g.arc_count() == 0 ? 0.0 : 1.0 - static_cast<double>(kept) / static_cast<double>(g.arc_count());
  s.verified = s.reduction.verified && is_subset(g.critical_arcs(), from_mask(mask)) &&
               evidence_closure_equal(s.evidence, s.network);
  return s;
}

bool evidence_closure_equal(const EvidenceGraph& evidence, const SignedDigraph& network) {
  const SignedDigraph& g = evidence.graph;
  std::vector<char> pseudo(g.node_count(), 0);
  for (const PseudoNode& p : evidence.pseudonodes) pseudo[p.id] = 1;
  using Named = std::tuple<std::string, std::string, int>;
  std::set<Named> want, got;
  const ParityClosure full = parity_closure(g), reduced = parity_closure(network);
  for (const ParityTriple& t : full.triples())
    if (!pseudo[t.from] && !pseudo[t.to]) want.emplace(g.name(t.from), g.name(t.to), to_int(t.parity));
  std::set<std::string> real;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (!pseudo[v]) real.insert(g.name(v));
  for (const ParityTriple& t : reduced.triples())
    if (real.count(network.name(t.from)) && real.count(network.name(t.to)))
      got.emplace(network.name(t.from), network.name(t.to), to_int(t.parity));
  return want == got;
}

RedundancyReport redundancy(const SignedDigraph& g, bool exact) {
  if (g.arc_count() == 0) throw EmptyGraph();
  RedundancyReport r;
  r.reduction = exact ? exact_min(g, true) : best_btr(g);
  r.value = r.reduction.stats.redundancy;
  return r;
}

}  // namespace tredkit
