#include <random>
#include <set>

#include "doctest.h"

#include "dyncon/adversary.hpp"

using namespace dyncon;

namespace {

GraphSequence constant(const CommGraph& g, int rounds) {
  return GraphSequence(g.size(), std::vector<CommGraph>(static_cast<std::size_t>(rounds), g));
}

ScenarioParams thm1_params(int n, int d, Round tau, Round horizon) {
  ScenarioParams sp;
  sp.n = n;
  sp.diameter = d;
  sp.tau = tau;
  sp.horizon = horizon;
  return sp;
}

}  // namespace

TEST_CASE("check_rooted") {
  GraphSequence seq = constant(star(0, 3), 4);
  CHECK(check_rooted(seq) == std::vector<bool>{true, true, true, true});
  seq.at(3) = CommGraph(3);
  CHECK(check_rooted(seq) == std::vector<bool>{true, true, false, true});
  const auto report = membership(seq, 2, 1);
  CHECK_FALSE(report.rooted_ok);
  CHECK(report.first_unrooted == 3);

  const auto sigma1 = scenario("thm1-sigma1", thm1_params(7, 2, 9, 10)).front();
  CHECK(sigma1.rounds() == 10);
  for (bool rooted : check_rooted(sigma1)) CHECK(rooted);
}

TEST_CASE("check_diam") {
  std::mt19937_64 rng(2);
  const GraphSequence rooted = generate_rooted(5, 40, 9);
  CHECK_FALSE(check_diam(rooted, 4).has_value());

  GraphSequence alternating(3);
  for (int r = 0; r < 6; ++r) alternating.push_back(CommGraph(3, r % 2 ? std::vector<Edge>{{1, 0}, {0, 2}}
                                                                        : std::vector<Edge>{{0, 1}, {1, 2}}));
  CHECK_FALSE(check_diam(alternating, 2).has_value());

  // Root {0} holds for one round but 0 reaches only 1.
  GraphSequence chain(3, {CommGraph(3, {{0, 1}, {1, 2}})});
  const auto v = check_diam(chain, 1);
  REQUIRE(v.has_value());
  CHECK(v->window_start == 1);
  CHECK(v->process == 2);
  CHECK(v->root == ProcessSet{0});
  CHECK_FALSE(check_diam(chain, 2).has_value());
}

TEST_CASE("check_stability") {
  const auto windows = check_stability(constant(star(0, 3), 5), 5);
  REQUIRE(windows.size() == 1);
  CHECK(windows.front() == StableWindow{1, 5, ProcessSet{0}});

  GraphSequence alternating(3);
  for (int r = 0; r < 6; ++r) alternating.push_back(star(r % 2, 3));
  CHECK(check_stability(alternating, 2).empty());
  CHECK(stable_runs(alternating).size() == 6);

  const Round tau = 6;
  const auto sigma2 = scenario("thm1-sigma2", thm1_params(12, 2, tau, tau + 3)).front();
  const auto tail = check_stability(sigma2, 3);
  REQUIRE_FALSE(tail.empty());
  CHECK(tail.back() == StableWindow{tau + 1, tau + 3, ProcessSet{11}});
}

TEST_CASE("check_nonsplit") {
  CHECK_FALSE(check_nonsplit(constant(star(0, 4), 1)).has_value());
  const auto split = check_nonsplit(GraphSequence(2, {CommGraph(2)}));
  REQUIRE(split.has_value());
  CHECK(split->round == 1);
  CHECK(std::set<ProcessId>{split->p, split->q} == std::set<ProcessId>{0, 1});
}

TEST_CASE("compound sequences of rooted sequences are non-split") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const GraphSequence seq = generate_rooted(n, 2 * (n - 1), seed);
    CHECK_FALSE(check_nonsplit(compound_sequence(seq)).has_value());
  }
}

TEST_CASE("check_star_window") {
  CHECK(check_star_window(constant(star(0, 3), 2), 2).size() == 1);
  CHECK(check_star_window(constant(CommGraph(3, {{0, 1}, {1, 0}, {1, 2}}), 3), 1).empty());
}

TEST_CASE("compound_sequence") {
  const auto out = compound_sequence(constant(star(0, 3), 6));
  REQUIRE(out.rounds() == 3);
  for (Round r = 1; r <= 3; ++r) CHECK(out.at(r) == compound(star(0, 3), star(0, 3)));

  int dropped = -1;
  CHECK(compound_sequence(constant(star(0, 4), 7), &dropped).rounds() == 2);
  CHECK(dropped == 1);

  for (int n = 3; n <= 6; ++n) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      AdversarySpec spec;
      spec.n = n;
      spec.diameter = n - 1;
      spec.stability = 3 * (n - 1);
      spec.seed = seed;
      spec.horizon = 3 * n + spec.stability + 2 * (n - 1);
      const auto compounded = compound_sequence(generate_stable(spec).sequence);
      CHECK_FALSE(check_nonsplit(compounded).has_value());
      const auto stars = check_star_window(compounded, 2);
      REQUIRE_FALSE(stars.empty());
      CHECK(stars.front().length() >= 2);
    }
  }
}

TEST_CASE("generate_stable output is a member with the designated window") {
  for (int n = 2; n <= 6; ++n) {
    for (int d = 1; d < n; ++d) {
      for (std::uint64_t seed = 0; seed < 30; ++seed) {
        AdversarySpec spec;
        spec.n = n;
        spec.diameter = d;
        spec.stability = d + 1;
        spec.seed = seed;
        spec.horizon = 3 * n + d + 20;
        const auto gen = generate_stable(spec);
        CHECK(gen.sequence.rounds() == spec.horizon);
        CHECK(gen.window.length() == d + 1);
        CHECK(membership(gen.sequence, d, d + 1).member());
        const auto windows = check_stability(gen.sequence, d + 1);
        CHECK(std::find(windows.begin(), windows.end(), gen.window) != windows.end());
      }
    }
  }

  AdversarySpec spec;
  spec.n = 4;
  spec.diameter = 3;
  spec.stability = 4;
  spec.horizon = 60;
  spec.seed = 7;
  CHECK(membership(generate_stable(spec).sequence, 3, 4).member());

  spec.n = 2;
  spec.diameter = 1;
  spec.stability = 2;
  spec.horizon = 12;
  const auto small = generate_stable(spec);
  CHECK(membership(small.sequence, 1, 2).member());

  CHECK(generate_stable(spec).sequence == small.sequence);
}

TEST_CASE("generate_stable rejects bad specs") {
  AdversarySpec spec;
  spec.n = 3;
  spec.diameter = 3;
  spec.horizon = 10;
  CHECK_THROWS_AS(generate_stable(spec), std::invalid_argument);
  spec.diameter = 1;
  spec.stability = 0;
  CHECK_THROWS_AS(generate_stable(spec), std::invalid_argument);
  spec.stability = 2;
  spec.stability_start = 10;
  CHECK_THROWS_AS(generate_stable(spec), std::invalid_argument);
}

TEST_CASE("thm1 scenario graphs") {
  const int d = 2;
  const int n = 8;
  const auto sigma1 = scenario("thm1-sigma1", thm1_params(n, d, 6, 10)).front();
  // p_i is process i-1.
  for (Round r = 1; r <= 2 * d - 1; ++r) {
    const CommGraph& g = sigma1.at(r);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 2));
    CHECK(g.has_edge(1, 3));
    CHECK(root_of(g) == ProcessSet{0});
  }
  for (Round r = 2 * d; r <= 10; ++r) {
    const CommGraph& g = sigma1.at(r);
    CHECK(g.has_edge(2, 3));
    CHECK(g.has_edge(3, 0));
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(3, 2) == ((r - 2 * d) % 2 == 0));
    for (ProcessId v = d + 2; v < n; ++v) CHECK(g.has_edge(0, v));
  }

  ScenarioParams absent = thm1_params(n, d, 6, 10);
  absent.dotted_present_first = false;
  CHECK_FALSE(scenario("thm1-sigma1", absent).front().at(2 * d).has_edge(3, 2));

  CHECK_THROWS_AS(scenario("thm1", thm1_params(d + 2, d, 6, 10)), std::invalid_argument);
  CHECK_THROWS_AS(scenario("thm1", thm1_params(n, d, 2, 10)), std::invalid_argument);
  CHECK_THROWS_AS(scenario("nope", thm1_params(n, d, 6, 10)), std::invalid_argument);
}

TEST_CASE("thm1 pair gives the depicted processes identical in-edges before round D") {
  for (int d = 1; d <= 4; ++d) {
    const auto pair = scenario("thm1", thm1_params(d + 8, d, 2 * d + 2, 2 * d + 6));
    REQUIRE(pair.size() == 2);
    for (Round r = 1; r <= d - 1; ++r) {
      for (ProcessId p = 0; p < d + 2; ++p) {
        CHECK(in_neighborhood(pair[0].at(r), p) == in_neighborhood(pair[1].at(r), p));
      }
    }
  }
}

TEST_CASE("dimposs and lossy-link scenarios") {
  ScenarioParams sp;
  sp.n = 6;
  sp.diameter = 3;
  const CommGraph ga = scenario("dimposs-Ga", sp).front().at(1);
  for (ProcessId u = 0; u < 3; ++u) CHECK(ga.has_edge(u, u + 1));
  for (ProcessId u = 0; u < 4; ++u) {
    for (ProcessId v = 4; v < 6; ++v) CHECK(ga.has_edge(u, v));
  }
  CHECK(ga.edges().size() == 3 + 8);

  sp.n = 2;
  sp.horizon = 50;
  sp.seed = 4;
  const auto lossy = scenario("lossy-link", sp).front();
  CHECK(lossy.rounds() == 50);
  for (const auto& g : lossy.graphs()) CHECK(g.has_edge(0, 1) != g.has_edge(1, 0));
  CHECK(scenario("lossy-link", sp).front() == lossy);
}
