#include "dyncon/report_io.hpp"

#include <fstream>
#include <set>

namespace dyncon {

using nlohmann::json;

json to_json(const StableWindow& w) {
  return {{"start", w.start}, {"end", w.end}, {"root", w.root.to_vector()}};
}

json to_json(const MembershipReport& r) {
  json j;
  j["D"] = r.diameter;
  j["x"] = r.stability;
  j["member"] = r.member();
  j["rooted_ok"] = r.rooted_ok;
  j["first_unrooted"] = r.first_unrooted ? json(*r.first_unrooted) : json(nullptr);
  j["diam_ok"] = r.diam_ok;
  if (r.diam_violation) {
    j["diam_violation"] = {{"window_start", r.diam_violation->window_start},
                           {"process", r.diam_violation->process},
                           {"root", r.diam_violation->root.to_vector()}};
  } else {
    j["diam_violation"] = nullptr;
  }
  j["stability_ok"] = r.stability_ok;
  j["stability_windows"] = json::array();
  for (const auto& w : r.stability_windows) j["stability_windows"].push_back(to_json(w));
  j["nonsplit_ok"] = r.nonsplit_ok;
  if (r.split_violation) {
    j["split_violation"] = {
        {"round", r.split_violation->round}, {"p", r.split_violation->p}, {"q", r.split_violation->q}};
  } else {
    j["split_violation"] = nullptr;
  }
  j["star_windows"] = json::array();
  for (const auto& w : r.star_windows) j["star_windows"].push_back(to_json(w));
  return j;
}

json to_json(const Verdict& v) {
  json j;
  j["passed"] = v.passed();
  j["agreement"] = {{"ok", v.agreement_ok}};
  if (v.agreement_witness) {
    const auto& w = *v.agreement_witness;
    j["agreement"]["witness"] = {{"first", {{"pid", w.first}, {"value", w.first_value}, {"round", w.first_round}}},
                                 {"second", {{"pid", w.second}, {"value", w.second_value}, {"round", w.second_round}}}};
  }
  j["validity"] = {{"ok", v.validity_ok}};
  if (v.validity_witness) {
    const auto& w = *v.validity_witness;
    j["validity"]["witness"] = {{"pid", w.process}, {"value", w.value}, {"round", w.round}};
  }
  j["termination"] = {{"ok", v.termination_ok}, {"undecided", v.undecided}, {"deadline", v.deadline}};
  j["invariant_failures"] = json::array();
  for (const auto& f : v.invariant_failures) {
    j["invariant_failures"].push_back({{"id", f.id}, {"round", f.round}, {"pid", f.process}, {"detail", f.detail}});
  }
  return j;
}

json to_json(const SweepSummary& s) {
  json j;
  j["trials"] = s.trials;
  j["passed"] = s.passed;
  j["crashed"] = s.crashed;
  j["out_of_contract"] = s.out_of_contract;
  j["agreement_failures"] = s.agreement_failures;
  j["validity_failures"] = s.validity_failures;
  j["termination_failures"] = s.termination_failures;
  j["invariant_failures"] = s.invariant_failures;
  j["decision_offset"] = {{"min", s.offset_min ? json(*s.offset_min) : json(nullptr)},
                          {"median", s.offset_median ? json(*s.offset_median) : json(nullptr)},
                          {"max", s.offset_max ? json(*s.offset_max) : json(nullptr)}};
  j["failed_seeds"] = s.failed_seeds;
  return j;
}

json trial_to_json(const TrialResult& r) {
  json j = to_json(r.verdict);
  j["seed"] = r.seed;
  j["passed"] = r.passed();
  j["in_contract"] = r.in_contract;
  j["window"] = r.window ? to_json(*r.window) : json(nullptr);
  j["anchor"] = r.anchor;
  j["horizon"] = r.horizon;
  j["decision_rounds"] = r.decision_rounds;
  j["trace_hash"] = r.trace_hash;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

namespace {

template <class T>
T get_as(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

}  // namespace

RunConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {
      "algorithm",     "n",           "N",           "D",           "x",          "inputs",        "horizon",
      "seed",          "stability_start", "sprime_window", "prune", "skip_adoption", "skip_backoff", "unguarded_backoff", "retain_rounds",
      "scenario",      "sequence_file", "out_trace",  "out_verdict", "out_dir",    "check_detection", "decision_guard", "root_set"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }

  RunConfig rc;
  TrialConfig& t = rc.trial;
  if (doc.contains("algorithm")) {
    const auto name = get_as<std::string>(doc, "algorithm");
    if (name == "alg1") {
      t.algorithm = Algorithm::Alg1;
    } else if (name == "alg2") {
      t.algorithm = Algorithm::Alg2;
    } else {
      throw ConfigError("algorithm must be alg1 or alg2");
    }
  }
  if (doc.contains("n")) t.n = get_as<int>(doc, "n");
  if (doc.contains("N")) t.bound_n = get_as<int>(doc, "N");
  if (doc.contains("D")) t.diameter = get_as<int>(doc, "D");
  if (doc.contains("x")) t.stability = get_as<int>(doc, "x");
  if (doc.contains("inputs")) {
    const json& in = doc.at("inputs");
    if (in.is_string()) {
      if (in.get<std::string>() != "random-binary") throw ConfigError("inputs must be a list or \"random-binary\"");
    } else {
      t.inputs = get_as<std::vector<Value>>(doc, "inputs");
    }
  }
  if (doc.contains("horizon")) t.horizon = get_as<Round>(doc, "horizon");
  if (doc.contains("seed")) t.seed = get_as<std::uint64_t>(doc, "seed");
  if (doc.contains("stability_start")) t.stability_start = get_as<Round>(doc, "stability_start");
  if (doc.contains("sprime_window")) {
    const auto w = get_as<std::string>(doc, "sprime_window");
    if (w == "literal") {
      t.decision_window = DecisionWindow::Literal;
    } else if (w == "npd") {
      t.decision_window = DecisionWindow::Npd;
    } else {
      throw ConfigError("sprime_window must be literal or npd");
    }
  }
  if (doc.contains("prune")) {
    const auto w = get_as<std::string>(doc, "prune");
    if (w == "max") {
      t.prune = PruneWitness::Max;
    } else if (w == "min") {
      t.prune = PruneWitness::Min;
    } else {
      throw ConfigError("prune must be max or min");
    }
  }
  if (doc.contains("decision_guard")) {
    const auto w = get_as<std::string>(doc, "decision_guard");
    if (w == "exact") {
      t.decision_guard = DecisionGuard::Exact;
    } else if (w == "at-least") {
      t.decision_guard = DecisionGuard::AtLeast;
    } else {
      throw ConfigError("decision_guard must be exact or at-least");
    }
  }
  if (doc.contains("root_set")) {
    const auto w = get_as<std::string>(doc, "root_set");
    if (w == "known-only") {
      t.root_set = RootSetMode::KnownOnly;
    } else if (w == "with-unknown") {
      t.root_set = RootSetMode::WithUnknown;
    } else {
      throw ConfigError("root_set must be known-only or with-unknown");
    }
  }
  if (doc.contains("skip_adoption")) t.skip_adoption = get_as<bool>(doc, "skip_adoption");
  if (doc.contains("skip_backoff")) t.skip_backoff = get_as<bool>(doc, "skip_backoff");
  if (doc.contains("unguarded_backoff")) t.unguarded_backoff = get_as<bool>(doc, "unguarded_backoff");
  if (doc.contains("retain_rounds")) t.retain_rounds = get_as<Round>(doc, "retain_rounds");
  if (doc.contains("check_detection")) t.check_detection = get_as<bool>(doc, "check_detection");
  if (doc.contains("scenario")) t.scenario = get_as<std::string>(doc, "scenario");
  if (doc.contains("sequence_file")) rc.sequence_file = get_as<std::string>(doc, "sequence_file");
  if (doc.contains("out_trace")) rc.out_trace = get_as<std::string>(doc, "out_trace");
  if (doc.contains("out_verdict")) rc.out_verdict = get_as<std::string>(doc, "out_verdict");
  if (doc.contains("out_dir")) rc.out_dir = get_as<std::string>(doc, "out_dir");
  return rc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  return config_from_json(doc);
}

}  // namespace dyncon
