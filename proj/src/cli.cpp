#include "dyncon/cli.hpp"

#include <filesystem>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"

#include "dyncon/atomic_file.hpp"
#include "dyncon/sequence_io.hpp"

namespace dyncon {

using nlohmann::json;

namespace {

void emit(const json& doc, const std::string& path, std::ostream& out) {
  out << doc.dump(2) << '\n';
  if (!path.empty()) write_atomically(path, [&](std::ostream& f) { f << doc.dump(2) << '\n'; });
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  std::filesystem::path p(path);
  std::filesystem::path stem = p.parent_path() / p.stem();
  return stem.string() + suffix + p.extension().string();
}

TrialConfig prepared(const RunConfig& rc) {
  TrialConfig t = rc.trial;
  if (!rc.sequence_file.empty()) t.sequence = load_sequence(rc.sequence_file);
  return t;
}

}  // namespace

int cmd_run(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  TrialConfig t;
  try {
    t = prepared(rc);
    t.keep_trace = !rc.out_trace.empty();
    validate_config(t);
  } catch (const ParseError& e) {
    err << "error: " << rc.sequence_file << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  TrialResult res;
  try {
    res = run_trial(t);
  } catch (const std::exception& e) {
    err << "error: trial failed: " << e.what() << '\n';
    return kExitFailure;
  }
  if (!rc.out_trace.empty()) write_atomically(rc.out_trace, [&](std::ostream& f) { f << res.trace; });
  emit(trial_to_json(res), rc.out_verdict, out);
  if (!res.in_contract) err << "note: run is out of contract; termination not judged\n";
  return res.passed() ? kExitPass : kExitFailure;
}

int cmd_sweep(const RunConfig& rc, int trials, bool parallel, std::ostream& out, std::ostream& err) {
  if (trials < 1) {
    err << "error: trials must be >= 1\n";
    return kExitUsage;
  }
  TrialConfig t;
  try {
    t = prepared(rc);
    validate_config(t);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const auto results = parallel ? sweep_parallel(t, trials) : sweep_serial(t, trials);
  if (!rc.out_dir.empty()) {
    std::filesystem::create_directories(rc.out_dir);
    for (const auto& r : results) {
      const auto path = (std::filesystem::path(rc.out_dir) / ("verdict-" + std::to_string(r.seed) + ".json")).string();
      write_atomically(path, [&](std::ostream& f) { f << trial_to_json(r).dump(2) << '\n'; });
    }
  }
  const SweepSummary summary = summarize(results);
  for (const auto& r : results) {
    if (!r.error.empty()) err << "seed " << r.seed << " crashed: " << r.error << '\n';
  }
  emit(to_json(summary), rc.out_verdict, out);
  return summary.passed == summary.trials ? kExitPass : kExitFailure;
}

int cmd_validate(const std::string& sequence_file, int diameter, int x, const std::string& out_path,
                 std::ostream& out, std::ostream& err) {
  GraphSequence seq;
  try {
    seq = load_sequence(sequence_file);
  } catch (const ParseError& e) {
    err << "error: " << sequence_file << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (diameter < 1 || x < 1) {
    err << "error: D and x must be >= 1\n";
    return kExitUsage;
  }
  const MembershipReport report = membership(seq, diameter, x);
  emit(to_json(report), out_path, out);
  return report.member() ? kExitPass : kExitFailure;
}

int cmd_scenario(const std::string& name, const ScenarioParams& params, const std::string& out_path,
                 std::ostream& out, std::ostream& err) {
  std::vector<GraphSequence> seqs;
  try {
    seqs = scenario(name, params);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  json written = json::array();
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    const std::string path = seqs.size() == 1 ? out_path : with_suffix(out_path, ".sigma" + std::to_string(i + 1));
    save_sequence(path, seqs[i]);
    written.push_back({{"path", path}, {"n", seqs[i].process_count()}, {"rounds", seqs[i].rounds()}});
  }
  out << written.dump(2) << '\n';
  return kExitPass;
}

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<Round> horizon;
  std::optional<int> n, bound_n, diameter, x;
  std::string algorithm, sprime_window, prune, decision_guard, root_set, out_trace, out_verdict, sequence_file, out_dir;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON configuration document")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "base seed");
  cmd->add_option("--horizon", o.horizon, "number of rounds")->check(CLI::PositiveNumber);
  cmd->add_option("--algorithm", o.algorithm, "alg1 or alg2")->check(CLI::IsMember({"alg1", "alg2"}));
  cmd->add_option("-n,--processes", o.n, "process count");
  cmd->add_option("-N,--bound", o.bound_n, "known bound N >= n");
  cmd->add_option("-D,--diameter", o.diameter, "dynamic diameter");
  cmd->add_option("-x,--stability", o.x, "stability window length");
  cmd->add_option("--sprime-window", o.sprime_window, "decision window lower bound")
      ->check(CLI::IsMember({"literal", "npd"}));
  cmd->add_option("--prune", o.prune, "back-off pruning witness")->check(CLI::IsMember({"max", "min"}));
  cmd->add_option("--decision-guard", o.decision_guard, "decide only at r = l + N(D+2N) or at any later round")
      ->check(CLI::IsMember({"exact", "at-least"}));
  cmd->add_option("--root-set", o.root_set, "whether unknown estimates count in T")
      ->check(CLI::IsMember({"known-only", "with-unknown"}));
  cmd->add_option("--sequence", o.sequence_file, "run on a sequence file instead of generating one");
  cmd->add_option("--out-verdict", o.out_verdict, "verdict or summary JSON path");
}

RunConfig resolve(const Overrides& o) {
  RunConfig rc = o.config.empty() ? RunConfig{} : load_config(o.config);
  json patch = json::object();
  if (!o.algorithm.empty()) patch["algorithm"] = o.algorithm;
  if (!o.sprime_window.empty()) patch["sprime_window"] = o.sprime_window;
  if (!o.prune.empty()) patch["prune"] = o.prune;
  if (!o.decision_guard.empty()) patch["decision_guard"] = o.decision_guard;
  if (!o.root_set.empty()) patch["root_set"] = o.root_set;
  // Flags go through the same parser as the file so both share validation.
  const RunConfig flags = config_from_json(patch);
  if (!o.algorithm.empty()) rc.trial.algorithm = flags.trial.algorithm;
  if (!o.sprime_window.empty()) rc.trial.decision_window = flags.trial.decision_window;
  if (!o.prune.empty()) rc.trial.prune = flags.trial.prune;
  if (!o.decision_guard.empty()) rc.trial.decision_guard = flags.trial.decision_guard;
  if (!o.root_set.empty()) rc.trial.root_set = flags.trial.root_set;
  if (o.seed) rc.trial.seed = *o.seed;
  if (o.horizon) rc.trial.horizon = *o.horizon;
  if (o.n) rc.trial.n = *o.n;
  if (o.bound_n) rc.trial.bound_n = *o.bound_n;
  if (o.diameter) rc.trial.diameter = *o.diameter;
  if (o.x) rc.trial.stability = *o.x;
  if (!o.sequence_file.empty()) rc.sequence_file = o.sequence_file;
  if (!o.out_trace.empty()) rc.out_trace = o.out_trace;
  if (!o.out_verdict.empty()) rc.out_verdict = o.out_verdict;
  if (!o.out_dir.empty()) rc.out_dir = o.out_dir;
  return rc;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Consensus simulator for dynamic networks under message adversaries", "dyncon"};
  app.require_subcommand(1);

  Overrides run_o;
  auto* run_cmd = app.add_subcommand("run", "run one seeded trial and judge it");
  add_common(run_cmd, run_o);
  run_cmd->add_option("--out-trace", run_o.out_trace, "trace JSON lines path");

  Overrides sweep_o;
  int trials = 1;
  bool serial = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "run trials at seeds seed, seed+1, ...");
  add_common(sweep_cmd, sweep_o);
  sweep_cmd->add_option("--trials", trials, "number of trials");
  sweep_cmd->add_option("--out-dir", sweep_o.out_dir, "directory for per-trial verdicts");
  sweep_cmd->add_flag("--serial", serial, "run trials on one thread");

  std::string validate_file;
  std::string validate_out;
  int validate_d = 1;
  int validate_x = 2;
  auto* validate_cmd = app.add_subcommand("validate", "report adversary membership of a sequence file");
  validate_cmd->add_option("sequence", validate_file, "sequence JSON lines file")->required();
  validate_cmd->add_option("-D,--diameter", validate_d, "dynamic diameter")->required();
  validate_cmd->add_option("-x,--stability", validate_x, "stability window length")->required();
  validate_cmd->add_option("--out-verdict", validate_out, "report path");

  std::string scenario_name;
  std::string scenario_out;
  ScenarioParams sp;
  auto* scenario_cmd = app.add_subcommand("scenario", "write a scripted sequence");
  scenario_cmd->add_option("name", scenario_name, "scenario name")->required()->check(CLI::IsMember(scenario_names()));
  scenario_cmd->add_option("-n,--processes", sp.n, "process count")->required();
  scenario_cmd->add_option("-D,--diameter", sp.diameter, "dynamic diameter");
  scenario_cmd->add_option("--tau", sp.tau, "decision horizon of the construction");
  scenario_cmd->add_option("--horizon", sp.horizon, "number of rounds");
  scenario_cmd->add_option("--seed", sp.seed, "seed for randomized scenarios");
  scenario_cmd->add_flag("!--dotted-absent-first", sp.dotted_present_first,
                         "dotted edges are missing in the first round of their bracket");
  scenario_cmd->add_option("--out", scenario_out, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_run(resolve(run_o), out, err);
    if (*sweep_cmd) return cmd_sweep(resolve(sweep_o), trials, !serial, out, err);
    if (*validate_cmd) return cmd_validate(validate_file, validate_d, validate_x, validate_out, out, err);
    if (*scenario_cmd) return cmd_scenario(scenario_name, sp, scenario_out, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace dyncon
