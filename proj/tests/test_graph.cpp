#include <random>
#include <sstream>

#include "doctest.h"

#include "dyncon/adversary.hpp"
#include "dyncon/graph.hpp"
#include "dyncon/sequence_io.hpp"

using namespace dyncon;

namespace {

CommGraph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  CommGraph g(n);
  for (ProcessId u = 0; u < n; ++u) {
    for (ProcessId v = 0; v < n; ++v) {
      if (u != v && coin(rng)) g.add_edge(u, v);
    }
  }
  return g;
}

// Reachability closure over explicit edges, self included.
std::vector<ProcessSet> reach(const CommGraph& g) {
  const int n = g.size();
  std::vector<ProcessSet> out(static_cast<std::size_t>(n));
  for (ProcessId s = 0; s < n; ++s) {
    ProcessSet seen = ProcessSet::single(s);
    bool grew = true;
    while (grew) {
      grew = false;
      for (ProcessId u : seen) {
        const ProcessSet next = seen | g.strict_out(u);
        if (next != seen) {
          seen = next;
          grew = true;
        }
      }
    }
    out[static_cast<std::size_t>(s)] = seen;
  }
  return out;
}

// Every nonempty subset that is strongly connected and has no in-edge from outside.
std::vector<ProcessSet> brute_roots(const CommGraph& g) {
  const int n = g.size();
  const auto r = reach(g);
  std::vector<ProcessSet> out;
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
    const ProcessSet s(bits);
    bool ok = true;
    for (ProcessId u : s) {
      if (!s.is_subset_of(r[static_cast<std::size_t>(u)])) ok = false;
      if (!g.strict_in(u).is_subset_of(s)) ok = false;
    }
    if (ok) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](ProcessSet a, ProcessSet b) { return a.front() < b.front(); });
  return out;
}

// Boolean matrix product with identity on both factors.
CommGraph matrix_product(const CommGraph& a, const CommGraph& b) {
  const int n = a.size();
  CommGraph out(n);
  auto edge = [](const CommGraph& g, int u, int v) { return u == v || g.has_edge(u, v); };
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      for (int w = 0; w < n; ++w) {
        if (edge(a, u, w) && edge(b, w, v)) out.add_edge(u, v);
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("in_neighborhood includes the implicit self-loop") {
  CHECK(in_neighborhood(CommGraph(3), 0) == ProcessSet{0});
  CHECK(in_neighborhood(CommGraph(3, {{1, 0}, {2, 0}}), 0) == ProcessSet{0, 1, 2});
  CHECK(in_neighborhood(star(1, 3), 0) == ProcessSet{0, 1});
  CHECK_THROWS_AS(in_neighborhood(CommGraph(3), 3), std::invalid_argument);
}

TEST_CASE("self-loops are never stored") {
  CommGraph g(2);
  g.add_edge(1, 1);
  CHECK(g.edges().empty());
  CHECK(star(0, 3).edges() == std::vector<Edge>{{0, 1}, {0, 2}});
}

TEST_CASE("root components") {
  CHECK(root_components(CommGraph(3)) == std::vector<ProcessSet>{{0}, {1}, {2}});
  CHECK(root_components(CommGraph(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}})) ==
        std::vector<ProcessSet>{{0, 1}, {2, 3}});
  CHECK(root_components(star(0, 3)) == std::vector<ProcessSet>{{0}});
  CHECK(is_rooted(star(0, 4)));
  CHECK_FALSE(is_rooted(CommGraph(2)));
  CHECK(root_of(CommGraph(2)).empty());

  ScenarioParams sp;
  sp.n = 6;
  sp.diameter = 3;
  const CommGraph ga = scenario("dimposs-Ga", sp).front().at(1);
  CHECK(root_components(ga) == std::vector<ProcessSet>{{0}});
  for (ProcessId v = 4; v < 6; ++v) {
    for (ProcessId u = 0; u < 4; ++u) CHECK(ga.has_edge(u, v));
  }
  const CommGraph gb = scenario("dimposs-Gb", sp).front().at(1);
  CHECK(is_rooted(gb));
  CHECK(root_of(gb) == ProcessSet{0, 1});
}

TEST_CASE("root components match the closed strongly connected set enumerator") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 600; ++trial) {
    const int n = 1 + trial % 6;
    const CommGraph g = random_graph(n, 0.1 + 0.1 * (trial % 5), rng);
    const auto roots = root_components(g);
    REQUIRE_FALSE(roots.empty());
    CHECK(roots == brute_roots(g));
    ProcessSet seen;
    for (ProcessSet r : roots) {
      CHECK_FALSE(seen.intersects(r));
      seen |= r;
    }
  }
}

TEST_CASE("compound") {
  CommGraph any(3, {{2, 1}});
  CHECK(compound(CommGraph(3), any) == any);
  CHECK(compound(any, CommGraph(3)) == any);

  const CommGraph c = compound(CommGraph(3, {{0, 1}}), CommGraph(3, {{1, 2}}));
  CHECK(c.has_edge(0, 2));
  CHECK(c.has_edge(0, 1));
  CHECK(c.has_edge(1, 2));
  CHECK_FALSE(c.has_edge(2, 0));

  const CommGraph cycle(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(compound(cycle, cycle) == matrix_product(cycle, cycle));
  CHECK(compound(cycle, cycle) == CommGraph(3, {{0, 1}, {0, 2}, {1, 2}, {1, 0}, {2, 0}, {2, 1}}));

  CHECK(compound(star(0, 3), star(1, 3)).has_edge(0, 2));
  CHECK_THROWS_AS(compound(CommGraph(2), CommGraph(3)), std::invalid_argument);
}

TEST_CASE("compound agrees with the matrix product and is associative") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + trial % 5;
    const CommGraph a = random_graph(n, 0.25, rng);
    const CommGraph b = random_graph(n, 0.25, rng);
    const CommGraph c = random_graph(n, 0.25, rng);
    CHECK(compound(a, b) == matrix_product(a, b));
    CHECK(compound(compound(a, b), c) == compound(a, compound(b, c)));
  }
}

TEST_CASE("causal past") {
  GraphSequence one(3, {star(2, 3)});
  CHECK(causal_past(one, 0, 0, 1) == ProcessSet{0, 2});
  CHECK(causal_past(one, 0, 1, 1) == ProcessSet{0});

  GraphSequence chains(4);
  for (int r = 0; r < 3; ++r) chains.push_back(CommGraph(4, {{0, 1}, {1, 2}, {2, 3}}));
  CHECK(causal_past(chains, 3, 0, 3) == ProcessSet::all(4));
  CHECK(causal_past(chains, 3, 1, 3) == ProcessSet{1, 2, 3});
  CHECK_THROWS_AS(causal_past(chains, 0, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(causal_past(chains, 0, 0, 4), std::invalid_argument);
}

TEST_CASE("causal past grows with b, contains p, and equals the compound fold") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 5;
    GraphSequence seq(n);
    for (int r = 0; r < 6; ++r) seq.push_back(random_graph(n, 0.2, rng));
    for (Round a = 0; a <= 6; ++a) {
      CommGraph fold(n);
      for (Round b = a; b <= 6; ++b) {
        if (b > a) fold = compound(fold, seq.at(b));
        const auto all = causal_past_all(seq, a, b);
        for (ProcessId p = 0; p < n; ++p) {
          const ProcessSet cp = causal_past(seq, p, a, b);
          CHECK(cp.contains(p));
          CHECK(cp == all[static_cast<std::size_t>(p)]);
          CHECK(cp == in_neighborhood(fold, p));
          if (b < 6) CHECK(cp.is_subset_of(causal_past(seq, p, a, b + 1)));
        }
      }
    }
  }
}

TEST_CASE("sequence files round-trip") {
  std::mt19937_64 rng(3);
  GraphSequence seq(5);
  for (int r = 0; r < 7; ++r) seq.push_back(random_graph(5, 0.3, rng));
  std::stringstream buf;
  write_sequence(buf, seq);
  CHECK(read_sequence(buf) == seq);
}

TEST_CASE("sequence parse errors carry the line") {
  auto line_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_sequence(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("") == 0);
  CHECK(line_of("{\"n\": 2, \"rounds\": 1}\n{\"round\": 1, \"edges\": [[0, 2]]}\n") == 2);
  CHECK(line_of("{\"n\": 2, \"rounds\": 1}\n{\"round\": 2, \"edges\": []}\n") == 2);
  CHECK(line_of("{\"n\": 2, \"rounds\": 2}\n{\"round\": 1, \"edges\": []}\n") > 0);
  CHECK(line_of("not json\n") == 1);
  CHECK(line_of("{\"n\": 65, \"rounds\": 0}\n") == 1);
  CHECK(line_of("{\"n\": 2, \"rounds\": 1}\n{\"round\": 1, \"edges\": [[0]]}\n") == 2);
}
