#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tredkit/approx.hpp"
#include "tredkit/graph.hpp"
#include "tredkit/reduction.hpp"

namespace tredkit {

enum class EvidenceKind { Direct, DoubleCausal, Catalytic, UpstreamDirect };

/// `A -> B` is Direct(source A, target B). `C => (A -> B)` and its variants
/// name C as the actor and carry C's sign in sign_outer.
struct Evidence {
  EvidenceKind kind = EvidenceKind::Direct;
  std::string actor;  // empty for Direct
  std::string source;
  std::string target;
  Sign sign_outer = Sign::Pos;
  Sign sign_inner = Sign::Pos;
  std::size_t line = 0;

  /// Equality ignores the line number.
  bool same_statement(const Evidence& o) const {
    return kind == o.kind && actor == o.actor && source == o.source && target == o.target &&
           sign_outer == o.sign_outer && sign_inner == o.sign_inner;
  }
};

/// Grammar, one statement per line, `#` comments:
///   A -> B | A -| B
///   C <op> (A -> B) | C <op> (A -| B)
/// with <op> one of `=>` `=|` (double-causal), `=cat=>` `=cat|` (catalytic),
/// `=up=>` `=up|` (upstream-direct); a trailing `|` makes C inhibitory.
/// Repeated statements are kept once. Throws ParseError.
std::vector<Evidence> parse_evidence(std::string_view text);

struct PseudoNode {
  NodeId id = 0;
  std::size_t evidence = 0;  // index into the evidence list
};

struct EvidenceGraph {
  SignedDigraph graph;
  std::vector<PseudoNode> pseudonodes;
  /// One entry per pair reported both as promoting and inhibiting.
  std::vector<std::string> warnings;
};

/// Direct: critical A -> B. Catalytic: critical A -> B and C -> B.
/// UpstreamDirect: critical A -> B and C -> A. DoubleCausal: a fresh node P
/// with non-critical A -> P (+), P -> B (inner sign), C -> P (outer sign).
/// Evidence names are numbered first, pseudonodes (P1, P2, ... made unique
/// against evidence names) after them.
EvidenceGraph build_graph(const std::vector<Evidence>& evidence);

/// Best label-aware reduction over the available component solvers
/// (critical2, maxed2, and kry up to kBestOfKryNodeLimit nodes per call).
inline constexpr std::size_t kBestOfKryNodeLimit = 2000;
ReductionResult best_btr(const SignedDigraph& g, const SolverOptions& opts = {});

struct SynthesisResult {
  EvidenceGraph evidence;
  /// Label-aware reduction of evidence.graph, before pseudonode collapse.
  ReductionResult reduction;
  /// Reduced network over the evidence nodes and the surviving pseudonodes.
  SignedDigraph network;
  std::vector<std::string> pseudonodes;  // surviving pseudonode names
  /// 1 - |network arcs| / |evidence arcs|.
  double redundancy = 0.0;
  /// The network keeps every critical arc and the evidence graph's parity
  /// closure restricted to evidence (non-pseudo) nodes.
  bool verified = false;
};

/// parse_evidence, build_graph, best_btr, then pseudonode collapse: a
/// pseudonode is removed with its arcs when every (in-arc, out-arc) pair
/// through it has a replacement walk of the same parity avoiding it.
SynthesisResult synthesize(std::string_view text, const SolverOptions& opts = {});

/// Parity closures agree on pairs of evidence nodes (matched by name).
bool evidence_closure_equal(const EvidenceGraph& evidence, const SignedDigraph& network);

struct RedundancyReport {
  double value = 0.0;
  ReductionResult reduction;
};

/// R = 1 - |kept| / |E| from best_btr, or from the exact label-aware oracle
/// when `exact`. Throws EmptyGraph.
RedundancyReport redundancy(const SignedDigraph& g, bool exact = false);

}  // namespace tredkit
