#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "dyncon/adversary.hpp"
#include "dyncon/trial.hpp"
#include "dyncon/verification.hpp"

namespace dyncon {

/// Malformed or inconsistent configuration document.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const StableWindow& w);
nlohmann::json to_json(const MembershipReport& report);
nlohmann::json to_json(const Verdict& verdict);
nlohmann::json to_json(const SweepSummary& summary);
/// Verdict plus trial metadata (seed, contract flag, anchor, decisions).
nlohmann::json trial_to_json(const TrialResult& result);

/// Output paths carried alongside the trial parameters.
struct RunConfig {
  TrialConfig trial;
  std::string sequence_file;
  std::string out_trace;
  std::string out_verdict;
  std::string out_dir;  ///< sweep: per-trial verdicts land here when set
};

/// Reads one JSON configuration document. Recognized keys:
///   algorithm "alg1"|"alg2", n, N, D, x, inputs (list or "random-binary"),
///   horizon, seed, stability_start, sprime_window "literal"|"npd",
///   prune "max"|"min", decision_guard "exact"|"at-least",
///   root_set "known-only"|"with-unknown", skip_adoption, skip_backoff,
///   unguarded_backoff, retain_rounds,
///   scenario, sequence_file, out_trace, out_verdict, out_dir.
/// Unknown keys and ill-typed values throw ConfigError.
RunConfig config_from_json(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

}  // namespace dyncon
