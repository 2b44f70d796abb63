#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dyncon/adversary.hpp"
#include "dyncon/algorithms.hpp"
#include "dyncon/verification.hpp"

namespace dyncon {

enum class Algorithm { Alg1, Alg2 };

/// Rounds from the second graph of the first compound star window to the
/// latest decision of the voting algorithm, over the contractual adversary.
inline constexpr Round kAlg2DecisionOffset = 2;

struct TrialConfig {
  Algorithm algorithm = Algorithm::Alg1;
  int n = 2;
  int bound_n = 0;    ///< N; 0 means n
  int diameter = 1;   ///< D
  int stability = 0;  ///< x; 0 means D+1 (alg1) or 3(n-1) (alg2, before compounding)
  std::vector<Value> inputs;  ///< empty: uniform binary inputs drawn from the seed
  std::optional<Round> horizon;
  std::optional<Round> stability_start;
  Round max_stability_start = 0;  ///< 0: generator default
  std::uint64_t seed = 0;
  DecisionWindow decision_window = DecisionWindow::Npd;
  PruneWitness prune = PruneWitness::Max;
  DecisionGuard decision_guard = DecisionGuard::AtLeast;
  RootSetMode root_set = RootSetMode::WithUnknown;
  bool skip_adoption = false;
  bool skip_backoff = false;
  bool unguarded_backoff = false;
  Round retain_rounds = 0;
  std::string scenario;                 ///< scripted sequence instead of a generated one
  std::optional<GraphSequence> sequence;  ///< fixed sequence, overrides generation
  bool check_detection = true;
  bool keep_trace = false;  ///< keep the serialized trace in the result

  int effective_bound() const { return bound_n > 0 ? bound_n : n; }
  int effective_stability() const;
  Alg1Params alg1_params() const;
};

struct TrialResult {
  std::uint64_t seed = 0;
  bool in_contract = true;
  Verdict verdict;
  GraphSequence sequence;  ///< as executed (compounded for alg2)
  std::optional<StableWindow> window;
  Round anchor = 0;  ///< b for alg1; second star graph for alg2
  Round horizon = 0;
  std::vector<Round> decision_rounds;  ///< 0 for undecided
  std::uint64_t trace_hash = 0;
  std::string trace;  ///< JSON lines, only with keep_trace
  std::string error;  ///< non-empty when the trial crashed

  bool passed() const { return error.empty() && verdict.passed(); }
};

/// Throws std::invalid_argument on an unusable configuration.
void validate_config(const TrialConfig& cfg);

/// One trial at cfg.seed; exceptions from the run propagate.
TrialResult run_trial(const TrialConfig& cfg);

/// Trials at seeds cfg.seed + i; a crashing trial is recorded, not thrown.
std::vector<TrialResult> sweep_serial(const TrialConfig& cfg, int trials);
/// Same results as sweep_serial, trials distributed over OpenMP threads.
std::vector<TrialResult> sweep_parallel(const TrialConfig& cfg, int trials);

struct SweepSummary {
  int trials = 0;
  int passed = 0;
  int crashed = 0;
  int out_of_contract = 0;
  int agreement_failures = 0;
  int validity_failures = 0;
  int termination_failures = 0;
  int invariant_failures = 0;
  /// Decision round minus anchor over every decided process.
  std::optional<Round> offset_min;
  std::optional<double> offset_median;
  std::optional<Round> offset_max;
  std::vector<std::uint64_t> failed_seeds;
};

SweepSummary summarize(const std::vector<TrialResult>& results);

}  // namespace dyncon
