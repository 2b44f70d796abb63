#include "doctest.h"

#include "dyncon/trial.hpp"

using namespace dyncon;

namespace {

TrialConfig alg1(int n, int d) {
  TrialConfig cfg;
  cfg.n = n;
  cfg.diameter = d;
  cfg.seed = 100;
  return cfg;
}

void check_same(const std::vector<TrialResult>& a, const std::vector<TrialResult>& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].seed == b[i].seed);
    CHECK(a[i].trace_hash == b[i].trace_hash);
    CHECK(a[i].decision_rounds == b[i].decision_rounds);
    CHECK(a[i].passed() == b[i].passed());
    CHECK(a[i].sequence == b[i].sequence);
  }
}

}  // namespace

TEST_CASE("parallel sweeps reproduce the serial sweep") {
  check_same(sweep_serial(alg1(4, 2), 24), sweep_parallel(alg1(4, 2), 24));
  TrialConfig voting;
  voting.algorithm = Algorithm::Alg2;
  voting.n = 4;
  check_same(sweep_serial(voting, 12), sweep_parallel(voting, 12));
}

TEST_CASE("sweep seeds are base plus index") {
  const auto results = sweep_serial(alg1(3, 1), 3);
  CHECK(results[0].seed == 100);
  CHECK(results[2].seed == 102);
  TrialConfig one = alg1(3, 1);
  one.seed = 101;
  CHECK(run_trial(one).trace_hash == results[1].trace_hash);
  CHECK_THROWS_AS(sweep_serial(alg1(3, 1), 0), std::invalid_argument);
  CHECK_THROWS_AS(sweep_parallel(alg1(3, 1), 0), std::invalid_argument);
}

TEST_CASE("contractual trials pass and decide within N(D+2N) of the anchor") {
  for (int n = 2; n <= 5; ++n) {
    for (int d = 1; d < n; ++d) {
      const TrialConfig cfg = alg1(n, d);
      const auto summary = summarize(sweep_serial(cfg, 20));
      CHECK(summary.passed == 20);
      CHECK(summary.out_of_contract == 0);
      REQUIRE(summary.offset_max.has_value());
      CHECK(*summary.offset_max <= cfg.alg1_params().decision_delay());
    }
  }
}

TEST_CASE("input draws do not depend on the adversary stream") {
  TrialConfig cfg = alg1(4, 3);
  cfg.keep_trace = true;
  const auto random = run_trial(cfg);
  cfg.inputs = {1, 1, 1, 1};
  const auto fixed = run_trial(cfg);
  CHECK(random.sequence == fixed.sequence);
  for (Round d : fixed.decision_rounds) CHECK(d > 0);
}

TEST_CASE("config validation") {
  TrialConfig cfg = alg1(4, 4);
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg = alg1(4, 2);
  cfg.bound_n = 3;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg = alg1(4, 2);
  cfg.inputs = {1, 2};
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg = alg1(1, 1);
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
}

TEST_CASE("bounded views reproduce full traces at N(D+2N) retained rounds") {
  for (int n = 3; n <= 5; ++n) {
    TrialConfig full = alg1(n, n - 1);
    TrialConfig bounded = full;
    bounded.retain_rounds = full.alg1_params().decision_delay();
    const auto a = sweep_serial(full, 15);
    const auto b = sweep_serial(bounded, 15);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].trace_hash == b[i].trace_hash);
      CHECK(b[i].passed());
    }
  }
}

TEST_CASE("short stability is judged for safety only") {
  TrialConfig cfg = alg1(2, 1);
  cfg.stability = 1;
  cfg.scenario = "lossy-link";
  cfg.horizon = 120;
  const auto res = run_trial(cfg);
  CHECK_FALSE(res.in_contract);
  CHECK(res.verdict.agreement_ok);
  CHECK(res.verdict.validity_ok);
  CHECK(res.verdict.termination_ok);
}

TEST_CASE("voting trials decide within the tolerance") {
  TrialConfig cfg;
  cfg.algorithm = Algorithm::Alg2;
  for (int n = 3; n <= 5; ++n) {
    cfg.n = n;
    cfg.seed = 1;
    const auto summary = summarize(sweep_serial(cfg, 10));
    CHECK(summary.passed == 10);
    REQUIRE(summary.offset_max.has_value());
    CHECK(*summary.offset_max <= kAlg2DecisionOffset);
  }
}
