#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "dyncon/adversary.hpp"
#include "dyncon/algorithms.hpp"
#include "dyncon/engine.hpp"

namespace dyncon {

struct AgreementWitness {
  ProcessId first = 0;
  Value first_value = 0;
  Round first_round = 0;
  ProcessId second = 0;
  Value second_value = 0;
  Round second_round = 0;
};

struct ValidityWitness {
  ProcessId process = 0;
  Value value = 0;
  Round round = 0;
};

struct InvariantFailure {
  std::string id;
  Round round = 0;
  ProcessId process = 0;
  std::string detail;
};

struct Verdict {
  bool agreement_ok = true;
  std::optional<AgreementWitness> agreement_witness;
  bool validity_ok = true;
  std::optional<ValidityWitness> validity_witness;
  bool termination_ok = true;
  std::vector<ProcessId> undecided;
  Round deadline = 0;
  std::vector<InvariantFailure> invariant_failures;

  bool passed() const { return agreement_ok && validity_ok && termination_ok && invariant_failures.empty(); }
  void add(std::vector<InvariantFailure> more) {
    invariant_failures.insert(invariant_failures.end(), more.begin(), more.end());
  }
};

/// Agreement, validity, and termination by `deadline`. With
/// check_termination = false only safety is judged and termination_ok stays true.
template <class State>
Verdict check_consensus(const Execution<State>& exec, Round deadline, bool check_termination = true) {
  if (check_termination && (deadline < 0 || deadline > exec.rounds())) {
    throw std::invalid_argument("trace does not cover deadline round " + std::to_string(deadline));
  }
  Verdict v;
  v.deadline = deadline;
  const Round last = exec.rounds();
  std::optional<ProcessId> reference;
  for (ProcessId p = 0; p < exec.process_count(); ++p) {
    const State& s = exec.state(p, last);
    if (!s.decision) {
      if (check_termination) {
        v.termination_ok = false;
        v.undecided.push_back(p);
      }
      continue;
    }
    if (check_termination && s.decided_round > deadline) {
      v.termination_ok = false;
      v.undecided.push_back(p);
    }
    if (v.validity_ok &&
        std::find(exec.inputs.begin(), exec.inputs.end(), *s.decision) == exec.inputs.end()) {
      v.validity_ok = false;
      v.validity_witness = ValidityWitness{p, *s.decision, s.decided_round};
    }
    if (!reference) {
      reference = p;
    } else if (v.agreement_ok) {
      const State& ref = exec.state(*reference, last);
      if (*ref.decision != *s.decision) {
        v.agreement_ok = false;
        v.agreement_witness =
            AgreementWitness{*reference, *ref.decision, ref.decided_round, p, *s.decision, s.decided_round};
      }
    }
  }
  return v;
}

/// Write-once decisions: once set, a decision and its round never change.
template <class State>
std::vector<InvariantFailure> check_decisions_stable(const Execution<State>& exec) {
  std::vector<InvariantFailure> out;
  for (ProcessId p = 0; p < exec.process_count(); ++p) {
    for (Round r = 1; r <= exec.rounds(); ++r) {
      const State& before = exec.state(p, r - 1);
      const State& now = exec.state(p, r);
      if (before.decision && (now.decision != before.decision || now.decided_round != before.decided_round)) {
        out.push_back({"decision-write-once", r, p, "decision changed after being set"});
        break;
      }
    }
  }
  return out;
}

/// Re-derives each witness in `v` from the trace; true when all replay.
template <class State>
bool replay_witnesses(const Verdict& v, const Execution<State>& exec) {
  const Round last = exec.rounds();
  auto decided = [&](ProcessId p, Value val, Round r) {
    const State& s = exec.state(p, last);
    return s.decision && *s.decision == val && s.decided_round == r && exec.state(p, r).decision == val &&
           (r == 0 || !exec.state(p, r - 1).decision);
  };
  if (!v.agreement_ok) {
    if (!v.agreement_witness) return false;
    const auto& w = *v.agreement_witness;
    if (!decided(w.first, w.first_value, w.first_round) || !decided(w.second, w.second_value, w.second_round) ||
        w.first_value == w.second_value) {
      return false;
    }
  }
  if (!v.validity_ok) {
    if (!v.validity_witness) return false;
    const auto& w = *v.validity_witness;
    if (!decided(w.process, w.value, w.round)) return false;
    if (std::find(exec.inputs.begin(), exec.inputs.end(), w.value) != exec.inputs.end()) return false;
  }
  if (!v.termination_ok) {
    if (v.undecided.empty()) return false;
    for (ProcessId p : v.undecided) {
      const State& s = exec.state(p, last);
      if (s.decision && s.decided_round <= v.deadline) return false;
    }
  }
  return true;
}

/// A maximal run of rounds whose graph's root is v-locked.
struct VLockedWindow {
  Round start = 0;
  Round end = 0;
  Value value = 0;
  int length() const { return end - start + 1; }
  friend bool operator==(const VLockedWindow&, const VLockedWindow&) = default;
};

std::vector<VLockedWindow> track_v_locked_windows(const Execution<Alg1State>& exec);

/// After every v-locked window of length >= D+2N ending at c, every
/// proposal is v at every round >= c.
std::vector<InvariantFailure> assert_lemma_2N(const Execution<Alg1State>& exec, const Alg1Params& params);

/// From the end b of the earliest D+1 stable window on, every process is
/// v-locked with lock round <= b and either lock round = b or b queued.
std::vector<InvariantFailure> assert_locked_from_window(const Execution<Alg1State>& exec, const StableWindow& window,
                                                        int diameter);

/// After the first decision on v at round r, every proposal is v from r on.
std::vector<InvariantFailure> assert_decision_propagates(const Execution<Alg1State>& exec);

/// Voting algorithm: the first decision on v at round r leaves every
/// process with proposal v at the end of round r.
std::vector<InvariantFailure> assert_voting_agreement(const Execution<Alg2State>& exec);

/// Soundness and monotonicity of root estimates over every (p, s, r), and
/// completeness at s+D of every R-rooted run s..s+D.
std::vector<InvariantFailure> check_detection_contracts(const KnowledgeTrace& trace, int diameter);

template <class State>
std::vector<InvariantFailure> check_detection_contracts(const Execution<State>& exec, int diameter) {
  return check_detection_contracts(exec.knowledge(), diameter);
}

/// Lemma 1 brute force: `graphs` are rounds 1..n of a sequence, all rooted,
/// and `hitting` meets every root. Throws std::invalid_argument otherwise.
bool check_lemma1(const std::vector<CommGraph>& graphs, ProcessSet hitting);

template <class State>
bool check_indistinguishability(const Execution<State>& a, const Execution<State>& b, ProcessId p, Round through) {
  return views_equal_until(a, b, p, through);
}

}  // namespace dyncon
