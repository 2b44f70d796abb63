#include "dyncon/trial.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dyncon/trace_io.hpp"

namespace dyncon {

int TrialConfig::effective_stability() const {
  if (stability > 0) return stability;
  return algorithm == Algorithm::Alg1 ? diameter + 1 : 3 * (n - 1);
}

Alg1Params TrialConfig::alg1_params() const {
  Alg1Params p;
  p.bound_n = effective_bound();
  p.diameter = diameter;
  p.decision_window = decision_window;
  p.prune = prune;
  p.decision_guard = decision_guard;
  p.root_set = root_set;
  p.skip_adoption = skip_adoption;
  p.skip_backoff = skip_backoff;
  p.unguarded_backoff = unguarded_backoff;
  return p;
}

void validate_config(const TrialConfig& cfg) {
  require_process_count(cfg.n);
  if (cfg.n < 2) throw std::invalid_argument("n must be >= 2");
  if (cfg.effective_bound() < cfg.n) throw std::invalid_argument("N must be >= n");
  if (cfg.algorithm == Algorithm::Alg1 && (cfg.diameter < 1 || cfg.diameter > cfg.n - 1)) {
    throw std::invalid_argument("D must satisfy 1 <= D <= n-1");
  }
  if (cfg.stability < 0) throw std::invalid_argument("x must be >= 1");
  if (!cfg.inputs.empty() && static_cast<int>(cfg.inputs.size()) != cfg.n) {
    throw std::invalid_argument("expected " + std::to_string(cfg.n) + " inputs");
  }
  if (cfg.horizon && *cfg.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (cfg.retain_rounds < 0) throw std::invalid_argument("retain_rounds must be >= 0");
  if (cfg.sequence && cfg.sequence->process_count() != cfg.n) {
    throw std::invalid_argument("sequence has " + std::to_string(cfg.sequence->process_count()) + " processes, n is " +
                                std::to_string(cfg.n));
  }
}

namespace {

std::vector<Value> trial_inputs(const TrialConfig& cfg) {
  if (!cfg.inputs.empty()) return cfg.inputs;
  // Separate stream from the adversary so inputs do not shift the graphs.
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32), 0x1b9u};
  std::mt19937_64 rng(seq);
  std::bernoulli_distribution coin(0.5);
  std::vector<Value> out;
  for (int p = 0; p < cfg.n; ++p) out.push_back(coin(rng) ? 1 : 0);
  return out;
}

void truncate(GraphSequence& seq, Round rounds) {
  while (seq.rounds() > rounds) seq.pop_back();
}

std::optional<StableWindow> first_window(const GraphSequence& seq, int length) {
  const auto runs = check_stability(seq, length);
  if (runs.empty()) return std::nullopt;
  return runs.front();
}

template <class State>
void finish(TrialResult& res, const Execution<State>& exec, bool keep_trace) {
  const Round last = exec.rounds();
  for (ProcessId p = 0; p < exec.process_count(); ++p) {
    const State& s = exec.state(p, last);
    res.decision_rounds.push_back(s.decision ? s.decided_round : 0);
  }
  std::ostringstream trace;
  write_trace(trace, exec);
  res.trace = trace.str();
  res.trace_hash = fnv1a(res.trace);
  if (!keep_trace) res.trace.clear();
  res.verdict.add(check_decisions_stable(exec));
}

TrialResult run_alg1(const TrialConfig& cfg) {
  const Alg1Params params = cfg.alg1_params();
  const int d = cfg.diameter;
  const int x = cfg.effective_stability();
  const Round delay = params.decision_delay();

  TrialResult res;
  res.seed = cfg.seed;
  if (cfg.sequence) {
    res.sequence = *cfg.sequence;
  } else if (!cfg.scenario.empty()) {
    ScenarioParams sp;
    sp.n = cfg.n;
    sp.diameter = d;
    sp.horizon = cfg.horizon.value_or(500);
    sp.tau = std::max<Round>(2 * d - 1, sp.horizon - 1);
    sp.seed = cfg.seed;
    res.sequence = scenario(cfg.scenario, sp).front();
  } else {
    AdversarySpec spec;
    spec.n = cfg.n;
    spec.diameter = d;
    spec.stability = x;
    spec.stability_start = cfg.stability_start;
    spec.max_stability_start = cfg.max_stability_start;
    spec.seed = cfg.seed;
    const Round latest_start =
        cfg.stability_start.value_or(cfg.max_stability_start > 0 ? cfg.max_stability_start : 3 * cfg.n);
    spec.horizon = cfg.horizon.value_or(latest_start + x - 1 + delay + 5);
    auto gen = generate_stable(spec);
    res.sequence = std::move(gen.sequence);
    res.window = gen.window;
    if (!cfg.horizon) truncate(res.sequence, gen.window.end + delay + 5);
  }
  if (cfg.horizon) truncate(res.sequence, *cfg.horizon);

  // Contract: ROOTED ∩ DIAM(D) with some D+1 window, and x >= D+1 requested.
  if (!res.window) res.window = first_window(res.sequence, d + 1);
  res.in_contract = x >= d + 1 && res.window && res.window->length() >= d + 1 &&
                    membership(res.sequence, d, d + 1).member();
  res.horizon = res.sequence.rounds();

  const auto exec = run(Alg1(params), trial_inputs(cfg), res.sequence, EngineOptions{cfg.retain_rounds});
  Round deadline = 0;
  if (res.in_contract) {
    res.anchor = res.window->start + d;
    deadline = res.anchor + delay;
  }
  const bool judge_termination = res.in_contract && deadline <= exec.rounds();
  res.verdict = check_consensus(exec, deadline, judge_termination);
  res.verdict.add(assert_decision_propagates(exec));
  if (res.in_contract) {
    res.verdict.add(assert_lemma_2N(exec, params));
    res.verdict.add(assert_locked_from_window(exec, *res.window, d));
    if (cfg.check_detection) res.verdict.add(check_detection_contracts(exec, d));
  }
  finish(res, exec, cfg.keep_trace);
  return res;
}

TrialResult run_alg2(const TrialConfig& cfg) {
  const int n = cfg.n;
  TrialResult res;
  res.seed = cfg.seed;
  bool generated = false;
  if (cfg.sequence) {
    res.sequence = *cfg.sequence;
  } else {
    AdversarySpec spec;
    spec.n = n;
    spec.diameter = n - 1;  // any rooted run of n-1 rounds satisfies DIAM(n-1)
    spec.stability = cfg.effective_stability();
    spec.stability_start = cfg.stability_start;
    spec.seed = cfg.seed;
    const Round latest_start = cfg.stability_start.value_or(3 * n);
    spec.horizon = latest_start + spec.stability - 1 + 6 * (n - 1);
    res.sequence = compound_sequence(generate_stable(spec).sequence);
    generated = true;
  }

  std::vector<InvariantFailure> contract;
  if (auto split = check_nonsplit(res.sequence)) {
    contract.push_back({"nonsplit", split->round, split->p,
                        "no common in-neighbour with process " + std::to_string(split->q)});
  }
  const auto stars = check_star_window(res.sequence, 2);
  if (stars.empty()) contract.push_back({"star-window", 0, 0, "no star window of length 2"});
  res.in_contract = contract.empty();

  Round deadline = 0;
  if (!stars.empty()) {
    res.window = stars.front();
    res.anchor = stars.front().start + 1;
    deadline = res.anchor + kAlg2DecisionOffset;
  }
  if (cfg.horizon) {
    truncate(res.sequence, *cfg.horizon);
  } else if (generated && deadline > 0) {
    truncate(res.sequence, deadline + 3);
  }
  res.horizon = res.sequence.rounds();

  const auto exec = run(Alg2{}, trial_inputs(cfg), res.sequence, EngineOptions{cfg.retain_rounds});
  const bool judge_termination = res.in_contract && deadline <= exec.rounds();
  res.verdict = check_consensus(exec, deadline, judge_termination);
  // Generated sequences are contractual by construction; a miss is a generator bug.
  if (generated) res.verdict.add(contract);
  res.verdict.add(assert_voting_agreement(exec));
  finish(res, exec, cfg.keep_trace);
  return res;
}

TrialResult guarded_trial(const TrialConfig& cfg, int index) {
  TrialConfig mine = cfg;
  mine.seed = cfg.seed + static_cast<std::uint64_t>(index);
  try {
    return run_trial(mine);
  } catch (const std::exception& e) {
    TrialResult res;
    res.seed = mine.seed;
    res.error = e.what();
    return res;
  }
}

}  // namespace

TrialResult run_trial(const TrialConfig& cfg) {
  validate_config(cfg);
  return cfg.algorithm == Algorithm::Alg1 ? run_alg1(cfg) : run_alg2(cfg);
}

std::vector<TrialResult> sweep_serial(const TrialConfig& cfg, int trials) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  validate_config(cfg);
  std::vector<TrialResult> out;
  out.reserve(static_cast<std::size_t>(trials));
  for (int i = 0; i < trials; ++i) out.push_back(guarded_trial(cfg, i));
  return out;
}

std::vector<TrialResult> sweep_parallel(const TrialConfig& cfg, int trials) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  validate_config(cfg);
  std::vector<TrialResult> out(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < trials; ++i) out[static_cast<std::size_t>(i)] = guarded_trial(cfg, i);
  return out;
}

SweepSummary summarize(const std::vector<TrialResult>& results) {
  SweepSummary s;
  std::vector<Round> offsets;
  for (const auto& r : results) {
    ++s.trials;
    if (!r.error.empty()) {
      ++s.crashed;
      s.failed_seeds.push_back(r.seed);
      continue;
    }
    if (r.passed()) {
      ++s.passed;
    } else {
      s.failed_seeds.push_back(r.seed);
    }
    if (!r.in_contract) ++s.out_of_contract;
    if (!r.verdict.agreement_ok) ++s.agreement_failures;
    if (!r.verdict.validity_ok) ++s.validity_failures;
    if (!r.verdict.termination_ok) ++s.termination_failures;
    if (!r.verdict.invariant_failures.empty()) ++s.invariant_failures;
    if (r.anchor > 0) {
      for (Round d : r.decision_rounds) {
        if (d > 0) offsets.push_back(d - r.anchor);
      }
    }
  }
  if (!offsets.empty()) {
    std::sort(offsets.begin(), offsets.end());
    s.offset_min = offsets.front();
    s.offset_max = offsets.back();
    const std::size_t mid = offsets.size() / 2;
    s.offset_median = offsets.size() % 2 == 1 ? static_cast<double>(offsets[mid])
                                              : (offsets[mid - 1] + offsets[mid]) / 2.0;
  }
  return s;
}

}  // namespace dyncon
