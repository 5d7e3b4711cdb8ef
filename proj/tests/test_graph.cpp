#include <doctest.h>

#include <random>
#include <set>

#include "support.hpp"
#include "tredkit/closure.hpp"
#include "tredkit/errors.hpp"

using namespace tredkit;
using testing::A;
using testing::make;

namespace {

std::set<ParityTriple> triples_of(const ParityClosure& c) { return {c.triples().begin(), c.triples().end()}; }

std::set<ParityTriple> naive_triples(const SignedDigraph& g) {
  auto r = testing::naive_closure(g, g.all_arcs(), true);
  std::set<ParityTriple> out;
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (r[u][2 * v]) out.insert({u, v, Sign::Pos});
      if (r[u][2 * v + 1]) out.insert({u, v, Sign::Neg});
    }
  return out;
}

}  // namespace

TEST_CASE("weights parse as exact decimals") {
  CHECK(Weight::parse("1").units() == 1'000'000);
  CHECK(Weight::parse("0.5").units() == 500'000);
  CHECK(Weight::parse("2.000001").units() == 2'000'001);
  CHECK(Weight::parse("0.25").to_string() == "0.25");
  CHECK(Weight::parse("3").to_string() == "3");
  CHECK_THROWS_AS(Weight::parse("-1"), DomainError);
  CHECK_THROWS_AS(Weight::parse("1.0000001"), DomainError);
  CHECK_THROWS_AS(Weight::parse("abc"), DomainError);
  CHECK_THROWS_AS(Weight::parse(""), DomainError);
}

TEST_CASE("builder merges duplicate triples and keeps opposite labels apart") {
  SignedDigraph::Builder b;
  NodeId a = b.add_node("a"), c = b.add_node("c");
  CHECK(b.add_node("a") == a);
  b.add_arc(a, c, Sign::Pos, Weight{3});
  b.add_arc(a, c, Sign::Pos, Weight{2}, true);
  b.add_arc(a, c, Sign::Neg);
  SignedDigraph g = std::move(b).build();
  REQUIRE(g.arc_count() == 2);
  auto pos = g.find_arc(a, c, Sign::Pos);
  REQUIRE(pos);
  CHECK(g.arc(*pos).critical);
  CHECK(g.arc(*pos).weight == Weight{2});
  CHECK(g.find_arc(a, c, Sign::Neg));
  CHECK(g.name(a) == "a");
  CHECK(*g.find_node("c") == c);
  CHECK_FALSE(g.find_node("zz"));
}

TEST_CASE("adjacency lists agree with the arc table") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    SignedDigraph g = testing::random_graph(rng, 7, 0.3, 0.4, 0.1, true);
    std::size_t outs = 0, ins = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      for (ArcId a : g.out_arcs(v)) CHECK(g.arc(a).src == v);
      for (ArcId a : g.in_arcs(v)) CHECK(g.arc(a).dst == v);
      outs += g.out_arcs(v).size();
      ins += g.in_arcs(v).size();
    }
    CHECK(outs == g.arc_count());
    CHECK(ins == g.arc_count());
    CHECK(g.reversed().reversed() == g);
  }
}

TEST_CASE("parity closure of small fixed graphs") {
  SUBCASE("positive 3-cycle reaches everything positively") {
    ParityClosure c = parity_closure(testing::cycle(3));
    CHECK(c.size() == 9);
    for (const auto& t : c.triples()) CHECK(t.parity == Sign::Pos);
  }
  SUBCASE("negative 2-cycle doubles every parity") {
    ParityClosure c = parity_closure(make(2, {{0, 1, '+'}, {1, 0, '-'}}));
    CHECK(c.size() == 8);
    CHECK(c.contains(0, 0, Sign::Neg));
    CHECK(c.contains(1, 1, Sign::Neg));
    CHECK(c.contains(0, 1, Sign::Neg));
    CHECK(c.contains(1, 0, Sign::Pos));
  }
  SUBCASE("trivial walk only gives +1 on a node") {
    ParityClosure c = parity_closure(make(2, {{0, 1, '-'}}));
    CHECK(c.contains(0, 0, Sign::Pos));
    CHECK_FALSE(c.contains(0, 0, Sign::Neg));
    CHECK(c.contains(0, 1, Sign::Neg));
    CHECK_FALSE(c.contains(0, 1, Sign::Pos));
    CHECK_FALSE(c.reaches(1, 0));
  }
  SUBCASE("negative self-loop") {
    ParityClosure c = parity_closure(make(1, {{0, 0, '-'}}));
    CHECK(c.contains(0, 0, Sign::Neg));
  }
}

TEST_CASE("parity closure matches Floyd-Warshall on the doubled graph") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 300; ++t) {
    SignedDigraph g = testing::random_graph(rng, 1 + testing::draw(rng, 8), 0.25, 0.5, 0.0, true);
    ParityClosure c = parity_closure(g);
    CHECK(triples_of(c) == naive_triples(g));
    // Composition closure.
    for (const auto& x : c.triples())
      for (const auto& y : c.triples())
        if (x.to == y.from) CHECK(c.contains(x.from, y.to, x.parity * y.parity));
  }
}

TEST_CASE("strong components") {
  SUBCASE("3-cycle plus pendant arc") {
    SignedDigraph g = make(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
    Condensation c = scc_condense(g);
    REQUIRE(c.scc.count() == 2);
    CHECK(c.components()[0] == std::vector<NodeId>{0, 1, 2});
    CHECK(c.components()[1] == std::vector<NodeId>{3});
    REQUIRE(c.dag_arcs.size() == 1);
    CHECK(c.dag_arcs[0].has(Sign::Pos));
    CHECK_FALSE(c.dag_arcs[0].has(Sign::Neg));
  }
  SUBCASE("DAG gives singletons mirroring the arcs") {
    SignedDigraph g = make(4, {{0, 1}, {1, 2, '-'}, {0, 3}, {3, 2}});
    Condensation c = scc_condense(g);
    CHECK(c.scc.count() == 4);
    CHECK(c.dag_arcs.size() == 4);
  }
  SUBCASE("partition and topological numbering match mutual reachability") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
      SignedDigraph g = testing::random_graph(rng, 8, 0.18, 0.3, 0.0);
      auto r = testing::naive_closure(g, g.all_arcs(), false);
      auto reach = [&](NodeId u, NodeId v) { return r[u][2 * v] || r[u][2 * v + 1]; };
      Condensation c = scc_condense(g);
      for (NodeId u = 0; u < 8; ++u)
        for (NodeId v = 0; v < 8; ++v) {
          bool same = c.component_of()[u] == c.component_of()[v];
          CHECK(same == (reach(u, v) && reach(v, u)));
        }
      for (const auto& d : c.dag_arcs) CHECK(d.from < d.to);
      std::size_t covered = 0;
      for (const Arc& a : g.arcs())
        if (c.component_of()[a.src] != c.component_of()[a.dst]) ++covered;
      std::size_t reps = 0;
      for (const auto& d : c.dag_arcs) reps += d.has(Sign::Pos) + d.has(Sign::Neg);
      CHECK(reps <= covered);
    }
  }
}

TEST_CASE("parity classification") {
  CHECK(classify_parity(make(2, {{0, 1}, {1, 0}})).kind == ParityClass::Single);
  auto d = classify_parity(make(2, {{0, 1}, {1, 0, '-'}}));
  CHECK(d.kind == ParityClass::Double);
  CHECK(d.witness == NodeId{0});
  CHECK_THROWS_AS(classify_parity(make(2, {{0, 1}})), NotStronglyConnected);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    SignedDigraph g = testing::random_strong(rng, 5, 0.35, 0.4, 0.0);
    auto c = naive_triples(g);
    bool negative_cycle = false;
    for (NodeId u = 0; u < 5; ++u) negative_cycle |= c.count({u, u, Sign::Neg}) > 0;
    auto k = classify_parity(g);
    CHECK((k.kind == ParityClass::Double) == negative_cycle);
    if (k.witness) CHECK(c.count({*k.witness, *k.witness, Sign::Neg}));
  }
}

TEST_CASE("closure equality") {
  SignedDigraph tri = make(3, {{0, 1}, {1, 2}, {0, 2}});
  ArcId ab = *tri.find_arc(0, 1, Sign::Pos), bc = *tri.find_arc(1, 2, Sign::Pos), ac = *tri.find_arc(0, 2, Sign::Pos);
  CHECK(closure_equal(tri, ArcSet{ab, bc}, false));
  CHECK_FALSE(closure_equal(tri, ArcSet{ab, ac}, false));
  CHECK_THROWS_AS(closure_equal(tri, ArcSet{7}, false), ArcNotInGraph);

  SignedDigraph par = make(2, {{0, 1, '+'}, {0, 1, '-'}, {1, 0, '+'}});
  ArcSet no_neg{*par.find_arc(0, 1, Sign::Pos), *par.find_arc(1, 0, Sign::Pos)};
  CHECK(closure_equal(par, no_neg, false));
  CHECK_FALSE(closure_equal(par, no_neg, true));

  std::mt19937_64 rng(99);
  std::bernoulli_distribution half(0.6);
  for (int t = 0; t < 1500; ++t) {
    SignedDigraph g = testing::random_graph(rng, 1 + testing::draw(rng, 7), 0.3, 0.4, 0.0, true);
    CHECK(closure_equal(g, g.all_arcs(), true));
    ArcSet kept;
    for (ArcId a = 0; a < g.arc_count(); ++a)
      if (half(rng)) kept.push_back(a);
    for (bool aware : {false, true}) CHECK(closure_equal(g, kept, aware) == testing::naive_equal(g, kept, aware));
  }
}

TEST_CASE("reach probe agrees with the naive closure") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    SignedDigraph g = testing::random_graph(rng, 6, 0.3, 0.5, 0.0, true);
    ReachProbe probe(g);
    auto r = testing::naive_closure(g, g.all_arcs(), true);
    for (NodeId u = 0; u < 6; ++u)
      for (NodeId v = 0; v < 6; ++v)
        for (Sign p : {Sign::Pos, Sign::Neg}) {
          CHECK(probe.reachable(u, v, p, true, {}) == (r[u][2 * v + layer(p)] != 0));
          CHECK(probe.reachable(u, v, p, false, {}) == (r[u][2 * v] || r[u][2 * v + 1]));
        }
  }
}
