#include "tredkit/generator.hpp"

#include <unordered_set>
#include <vector>

#include "tredkit/errors.hpp"

namespace tredkit {

namespace {

/// Bernoulli(p) from 53 random bits.
bool chance(std::mt19937_64& rng, double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; }

void check_counts(const GeneratorOptions& o, std::size_t min_arcs) {
  if (o.nodes == 0) throw DomainError("generator needs at least one node");
  if (o.arcs < min_arcs) throw DomainError("too few arcs requested");
  if (o.arcs > o.nodes * (o.nodes - 1)) throw DomainError("more arcs requested than node pairs");
  if (o.negative_fraction < 0 || o.negative_fraction > 1 || o.critical_fraction < 0 || o.critical_fraction > 1)
    throw DomainError("fractions must lie in [0, 1]");
}

struct ArcSampler {
  const GeneratorOptions& o;
  std::mt19937_64& rng;
  SignedDigraph::Builder& b;
  std::unordered_set<std::uint64_t> used;

  bool add(NodeId u, NodeId v) {
    if (u == v || !used.insert(std::uint64_t{u} * o.nodes + v).second) return false;
    Sign s = chance(rng, o.negative_fraction) ? Sign::Neg : Sign::Pos;
    b.add_arc(u, v, s, kUnitWeight, chance(rng, o.critical_fraction));
    return true;
  }
  void fill() {
    while (used.size() < o.arcs) {
      auto u = static_cast<NodeId>(bounded_draw(rng, o.nodes));
      auto v = static_cast<NodeId>(bounded_draw(rng, o.nodes));
      add(u, v);
    }
  }
};

}  // namespace

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw DomainError("empty draw range");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
  std::uint64_t x;
  do x = rng();
  while (x > limit);
  return x % bound;
}

SignedDigraph random_strongly_connected(const GeneratorOptions& o) {
  check_counts(o, o.nodes == 1 ? 0 : o.nodes);
  std::mt19937_64 rng(o.seed);
  SignedDigraph::Builder b;
  for (std::size_t i = 0; i < o.nodes; ++i) b.add_node("n" + std::to_string(i));
  std::vector<NodeId> order(o.nodes);
  for (NodeId i = 0; i < o.nodes; ++i) order[i] = i;
  for (std::size_t i = o.nodes; i > 1; --i) std::swap(order[i - 1], order[bounded_draw(rng, i)]);
  ArcSampler s{o, rng, b, {}};
  if (o.nodes > 1)
    for (std::size_t i = 0; i < o.nodes; ++i) s.add(order[i], order[(i + 1) % o.nodes]);
  s.fill();
  return std::move(b).build();
}

SignedDigraph random_digraph(const GeneratorOptions& o) {
  check_counts(o, 0);
  std::mt19937_64 rng(o.seed);
  SignedDigraph::Builder b;
  for (std::size_t i = 0; i < o.nodes; ++i) b.add_node("n" + std::to_string(i));
  ArcSampler s{o, rng, b, {}};
  s.fill();
  return std::move(b).build();
}

std::string synthetic_evidence(std::size_t lines, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t names = std::max<std::size_t>(4, lines / 2);
  auto name = [&] { return "G" + std::to_string(bounded_draw(rng, names)); };
  auto distinct = [&](std::string& a, std::string& b) {
    do b = name();
    while (b == a);
  };
  static constexpr const char* kOuter[] = {"=>", "=|", "=cat=>", "=cat|", "=up=>", "=up|"};
  std::string out = "# synthetic evidence\n";
  for (std::size_t i = 0; i < lines; ++i) {
    std::string a = name(), b;
    distinct(a, b);
    const char* inner = chance(rng, 0.25) ? "-|" : "->";
    if (chance(rng, 0.6)) {
      out += a + " " + inner + " " + b + "\n";
    } else {
      std::string c = name();
      out += c + " " + kOuter[bounded_draw(rng, 6)] + " (" + a + " " + inner + " " + b + ")\n";
    }
  }
  return out;
}

}  // namespace tredkit
