#include "dyncon/verification.hpp"

#include <stdexcept>

#include "dyncon/detection.hpp"

namespace dyncon {

namespace {

// Per-check cap; a broken run would otherwise report every (p, r).
constexpr std::size_t kMaxFailures = 64;

bool full(const std::vector<InvariantFailure>& out) { return out.size() >= kMaxFailures; }

}  // namespace

std::vector<VLockedWindow> track_v_locked_windows(const Execution<Alg1State>& exec) {
  std::vector<VLockedWindow> out;
  std::optional<VLockedWindow> open;
  for (Round r = 1; r <= exec.rounds(); ++r) {
    const ProcessSet root = root_of(exec.sequence.at(r));
    std::optional<Value> v;
    bool locked = !root.empty();
    for (ProcessId q : root) {
      const Alg1State& s = exec.state(q, r);
      if (!s.locked || (v && *v != s.proposal)) {
        locked = false;
        break;
      }
      v = s.proposal;
    }
    if (open && (!locked || open->value != *v)) {
      out.push_back(*open);
      open.reset();
    }
    if (locked) {
      if (!open) open = VLockedWindow{r, r, *v};
      open->end = r;
    }
  }
  if (open) out.push_back(*open);
  return out;
}

std::vector<InvariantFailure> assert_lemma_2N(const Execution<Alg1State>& exec, const Alg1Params& params) {
  std::vector<InvariantFailure> out;
  const int span = params.diameter + 2 * params.bound_n;
  for (const auto& w : track_v_locked_windows(exec)) {
    if (w.length() < span) continue;
    const Round c = w.start + span - 1;
    for (ProcessId p = 0; p < exec.process_count() && !full(out); ++p) {
      for (Round r = c; r <= exec.rounds(); ++r) {
        if (exec.state(p, r).proposal != w.value) {
          out.push_back({"lemma-2N", r, p,
                         "proposal " + std::to_string(exec.state(p, r).proposal) + " after " +
                             std::to_string(w.value) + "-locked window from round " + std::to_string(w.start)});
          break;
        }
      }
    }
  }
  return out;
}

std::vector<InvariantFailure> assert_locked_from_window(const Execution<Alg1State>& exec, const StableWindow& window,
                                                        int diameter) {
  if (window.length() < diameter + 1) throw std::invalid_argument("window shorter than D+1");
  const Round a = window.start;
  const Round b = a + diameter;
  Value v = 0;
  for (ProcessId q : window.root) v = std::max(v, exec.state(q, a).proposal);

  std::vector<InvariantFailure> out;
  for (ProcessId p = 0; p < exec.process_count() && !full(out); ++p) {
    for (Round r = b; r <= exec.rounds(); ++r) {
      const Alg1State& s = exec.state(p, r);
      const bool queued = std::find(s.queue.begin(), s.queue.end(), b) != s.queue.end();
      if (!s.locked || s.proposal != v || s.lock_round > b || (s.lock_round != b && !queued)) {
        out.push_back({"JnvA", r, p,
                       "expected " + std::to_string(v) + "-locked with lock round <= " + std::to_string(b) +
                           ", got proposal " + std::to_string(s.proposal) + " lock round " +
                           std::to_string(s.lock_round) + (s.locked ? "" : " unlocked")});
        break;
      }
    }
  }
  return out;
}

namespace {

template <class State>
std::optional<std::pair<Round, Value>> first_decision(const Execution<State>& exec) {
  std::optional<std::pair<Round, Value>> first;
  const Round last = exec.rounds();
  for (ProcessId p = 0; p < exec.process_count(); ++p) {
    const State& s = exec.state(p, last);
    if (s.decision && (!first || s.decided_round < first->first)) first = {{s.decided_round, *s.decision}};
  }
  return first;
}

}  // namespace

std::vector<InvariantFailure> assert_decision_propagates(const Execution<Alg1State>& exec) {
  std::vector<InvariantFailure> out;
  const auto first = first_decision(exec);
  if (!first) return out;
  for (ProcessId p = 0; p < exec.process_count(); ++p) {
    for (Round r = first->first; r <= exec.rounds(); ++r) {
      if (exec.state(p, r).proposal != first->second) {
        out.push_back({"decision-propagates", r, p,
                       "proposal differs from the first decision " + std::to_string(first->second)});
        break;
      }
    }
  }
  return out;
}

std::vector<InvariantFailure> assert_voting_agreement(const Execution<Alg2State>& exec) {
  std::vector<InvariantFailure> out;
  const auto first = first_decision(exec);
  if (!first) return out;
  for (ProcessId p = 0; p < exec.process_count(); ++p) {
    if (exec.state(p, first->first).proposal != first->second) {
      out.push_back({"voting-agreement", first->first, p,
                     "proposal differs from the first decision " + std::to_string(first->second)});
    }
  }
  return out;
}

std::vector<InvariantFailure> check_detection_contracts(const KnowledgeTrace& trace, int diameter) {
  std::vector<InvariantFailure> out;
  const int n = trace.process_count();
  const Round rounds = trace.rounds();
  const GraphSequence& seq = *trace.sequence;
  std::vector<ProcessSet> truth(static_cast<std::size_t>(rounds) + 1);
  for (Round s = 1; s <= rounds; ++s) truth[static_cast<std::size_t>(s)] = root_of(seq.at(s));

  auto sound = [&](const KnowledgeView& view, Round s, const RootEstimate& est) {
    if (!est.is_known()) return;
    const ProcessSet actual = truth[static_cast<std::size_t>(s)];
    if (*est.root != actual) {
      out.push_back({"detection-sound", view.round(), view.owner(),
                     "round " + std::to_string(s) + " estimate " + est.root->to_string() + " but root is " +
                         actual.to_string()});
      return;
    }
    for (ProcessId q : *est.root) {
      if (!view.knows_state(q, s)) {
        out.push_back({"detection-sound", view.round(), view.owner(),
                       "round " + std::to_string(s) + " root member " + std::to_string(q) + " state unknown"});
        return;
      }
    }
  };

  // An estimate only changes when new round-s reports arrive, so (p, s) is
  // re-evaluated exactly when some q's known prefix grows past s.
  for (ProcessId p = 0; p < n && !full(out); ++p) {
    std::vector<RootEstimate> seen(static_cast<std::size_t>(rounds) + 1);
    for (Round r = 1; r <= rounds && !full(out); ++r) {
      const KnowledgeView view = trace.view(p, r);
      const KnowledgeView before = trace.view(p, r - 1);
      std::vector<bool> dirty(static_cast<std::size_t>(r) + 1, false);
      dirty[static_cast<std::size_t>(r)] = true;
      for (ProcessId q = 0; q < n; ++q) {
        const Round hi = std::min(view.last_known_state(q), r);
        for (Round s = std::max<Round>(1, before.last_known_state(q) + 1); s <= hi; ++s) {
          dirty[static_cast<std::size_t>(s)] = true;
        }
      }
      const Round lo = std::max<Round>(1, view.floor());
      for (Round s = lo; s <= r; ++s) {
        // In bounded mode expired reports vanish, so monotonicity is not claimed there.
        if (!dirty[static_cast<std::size_t>(s)] && trace.retain_rounds == 0) continue;
        const RootEstimate est = estimate_root(view, s);
        auto& old = seen[static_cast<std::size_t>(s)];
        if (trace.retain_rounds == 0 && old.is_known() && !(old == est)) {
          out.push_back({"detection-monotone", r, p, "round " + std::to_string(s) + " estimate changed"});
        }
        sound(view, s, est);
        old = est;
      }
    }
  }

  for (const auto& w : stable_runs(seq)) {
    for (Round s = w.start; s + diameter <= w.end && !full(out); ++s) {
      for (ProcessId p = 0; p < n; ++p) {
        const RootEstimate est = estimate_root(trace.view(p, s + diameter), s);
        if (!(est == RootEstimate::known(w.root))) {
          out.push_back({"detection-complete", s + diameter, p,
                         "round " + std::to_string(s) + " root " + w.root.to_string() + " not detected"});
        }
      }
    }
  }
  return out;
}

bool check_lemma1(const std::vector<CommGraph>& graphs, ProcessSet hitting) {
  const int n = graphs.empty() ? 0 : graphs.front().size();
  if (n < 1 || static_cast<int>(graphs.size()) != n) {
    throw std::invalid_argument("need exactly n graphs on n processes");
  }
  GraphSequence seq(n);
  for (const auto& g : graphs) {
    if (g.size() != n) throw std::invalid_argument("graphs disagree on n");
    const ProcessSet root = root_of(g);
    if (root.empty()) throw std::invalid_argument("graph is not rooted");
    if (!root.intersects(hitting)) throw std::invalid_argument("set misses a root");
    seq.push_back(g);
  }
  // Some q in X ∩ Root(G^i) must lie in CP(p, i, n) for some i.
  for (ProcessId p = 0; p < n; ++p) {
    bool reached = false;
    for (Round i = 1; i <= n && !reached; ++i) {
      reached = causal_past(seq, p, i, n).intersects(hitting & root_of(seq.at(i)));
    }
    if (!reached) return false;
  }
  return true;
}

}  // namespace dyncon
