#include "dyncon/algorithms.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dyncon {

TraceRecord Alg1State::record(Round r, ProcessId p) const {
  TraceRecord rec;
  rec.round = r;
  rec.pid = p;
  rec.proposal = proposal;
  rec.locked = locked;
  rec.lock_round = lock_round;
  rec.queue = queue;
  rec.decided = decision.has_value();
  rec.decision = decision;
  rec.detected_root = detected_root;
  return rec;
}

TraceRecord Alg2State::record(Round r, ProcessId p) const {
  TraceRecord rec;
  rec.round = r;
  rec.pid = p;
  rec.proposal = proposal;
  rec.decided = decision.has_value();
  rec.decision = decision;
  rec.detected_root = detected_root;
  rec.has_vote = true;
  rec.vote = vote;
  return rec;
}

Alg1::Alg1(Alg1Params params) : params_(params) {
  if (params_.bound_n < 1) throw std::invalid_argument("N must be >= 1");
  if (params_.diameter < 1) throw std::invalid_argument("D must be >= 1");
}

Alg1State Alg1::initial(ProcessId, Value input, int n) const {
  if (params_.bound_n < n) throw std::invalid_argument("N must be >= n");
  Alg1State s;
  s.proposal = input;
  s.locked = true;
  s.lock_round = 1;
  return s;
}

namespace {

// Visits every known state q^s with q heard from since round `since` and
// s in [lo, last known state of q].
template <class Fn>
void for_each_recent_state(const ProcessView<Alg1State>& view, Round since, Round lo, Fn&& fn) {
  for (ProcessId q = 0; q < view.process_count(); ++q) {
    if (view.last_heard(q) < since) continue;
    const Round hi = view.last_known_state(q);
    for (Round s = std::max({lo, Round{0}, view.floor()}); s <= hi; ++s) fn(q, s, view.state(q, s));
  }
}

}  // namespace

Alg1State Alg1::step(const Alg1State& prev, const ProcessView<Alg1State>& view) const {
  const Round r = view.round();
  const int big_n = params_.bound_n;
  const int d = params_.diameter;
  Alg1State st = prev;

  // Root^r_p(r-D); undefined rounds count as ⊥.
  const RootEstimate root = r - d >= 1 ? estimate_root(view, r - d) : RootEstimate::unknown();
  st.detected_root = root;

  // T: distinct estimates since the estimated start of stability; rounds < 1 are ⊥.
  std::set<ProcessSet> roots_since;
  bool unknown_since = false;
  const Round queue_max = st.queue.empty() ? 0 : st.queue.back();
  for (Round i = std::max(queue_max, st.lock_round) - d; i <= r - d; ++i) {
    const RootEstimate est = i >= 1 ? estimate_root(view, i) : RootEstimate::unknown();
    if (est.is_known()) {
      roots_since.insert(*est.root);
    } else {
      unknown_since = true;
    }
  }
  const std::size_t t_size =
      roots_since.size() + (params_.root_set == RootSetMode::WithUnknown && unknown_since ? 1 : 0);

  if (root.is_known()) {
    Value candidate = 0;
    for (ProcessId q : *root.root) candidate = std::max(candidate, view.state(q, r - d).proposal);
    if (!st.locked || (candidate != st.proposal && t_size > 1)) {
      st.proposal = candidate;
      st.locked = true;
      st.lock_round = r;
    } else if (candidate == st.proposal) {
      st.queue.push_back(r);
    }
  }

  // Back off on a contradicting state among those of the last N rounds.
  if (!params_.skip_backoff && (params_.unguarded_backoff || r >= st.lock_round + big_n)) {
    std::optional<Round> witness;
    for_each_recent_state(view, r - big_n, r - big_n, [&](ProcessId, Round s, const Alg1State& qs) {
      if (!qs.locked || qs.proposal != st.proposal) {
        if (!witness) {
          witness = s;
        } else {
          witness = params_.prune == PruneWitness::Max ? std::max(*witness, s) : std::min(*witness, s);
        }
      }
    });
    if (witness) {
      std::erase_if(st.queue, [&](Round q) { return q <= *witness; });
      if (!st.queue.empty()) {
        st.lock_round = st.queue.front();
      } else {
        st.locked = false;
      }
    }
  }

  // Adopt the single locked value seen in the last N rounds.
  if (!params_.skip_adoption && r >= st.lock_round + 2 * big_n) {
    std::optional<Value> only;
    bool single = true;
    for_each_recent_state(view, r - big_n, r - big_n, [&](ProcessId, Round, const Alg1State& qs) {
      if (!qs.locked || !single) return;
      if (!only) {
        only = qs.proposal;
      } else if (*only != qs.proposal) {
        single = false;
      }
    });
    if (single && only && *only != st.proposal) st.proposal = *only;
  }

  const Round delay = params_.decision_delay();
  const bool due = params_.decision_guard == DecisionGuard::Exact ? r == st.lock_round + delay
                                                                   : r >= st.lock_round + delay;
  if (!st.decision && due) {
    const Round lo = params_.decision_window == DecisionWindow::Literal ? r - (d + 2 * big_n) * (d + 2 * big_n)
                                                                         : r - delay;
    bool unanimous = true;
    for_each_recent_state(view, r - delay, lo, [&](ProcessId, Round, const Alg1State& qs) {
      if (!qs.locked || qs.proposal != st.proposal) unanimous = false;
    });
    if (unanimous) {
      st.decision = st.proposal;
      st.decided_round = r;
    }
  }
  return st;
}

std::optional<Value> alg2_value_of_root(const std::vector<VoteMessage>& received, ProcessSet root) {
  std::optional<Value> best_proposal;
  std::optional<Value> vote;
  ProcessId vote_sender = kMaxProcesses;
  for (const auto& msg : received) {
    if (!root.contains(msg.sender)) continue;
    if (msg.vote && msg.sender < vote_sender) {
      vote = msg.vote;
      vote_sender = msg.sender;
    }
    best_proposal = std::max(best_proposal.value_or(0), msg.proposal);
  }
  return vote ? vote : best_proposal;
}

Alg2State alg2_round(const Alg2State& state, const std::vector<VoteMessage>& received, const RootEstimate& prev_root,
                     Round r) {
  Alg2State st = state;
  st.detected_root = prev_root;
  if (st.decision) return st;

  std::optional<Value> common;
  bool unanimous = !received.empty();
  for (const auto& msg : received) {
    if (!msg.vote || (common && *common != *msg.vote)) {
      unanimous = false;
      break;
    }
    common = msg.vote;
  }
  if (unanimous && common) {
    st.proposal = *common;
    st.vote = *common;
    st.decision = *common;
    st.decided_round = r;
    return st;
  }

  if (prev_root.is_known()) {
    if (auto v = alg2_value_of_root(received, *prev_root.root)) {
      st.proposal = *v;
      st.vote = *v;
      return st;
    }
  }

  const VoteMessage* voted = nullptr;
  for (const auto& msg : received) {
    if (msg.vote && (!voted || msg.sender < voted->sender)) voted = &msg;
  }
  if (voted) st.proposal = *voted->vote;
  st.vote.reset();
  return st;
}

Alg2State Alg2::initial(ProcessId, Value input, int) const {
  Alg2State s;
  s.proposal = input;
  return s;
}

Alg2State Alg2::step(const Alg2State& prev, const ProcessView<Alg2State>& view) const {
  const Round r = view.round();
  const ProcessId p = view.owner();
  std::vector<VoteMessage> received;
  const auto in = view.in_edges(p, r);
  if (!in) throw std::logic_error("own receive set missing from view");
  for (ProcessId q : *in) {
    const Alg2State& qs = view.state(q, r - 1);
    received.push_back({q, qs.vote, qs.proposal});
  }
  const RootEstimate prev_root = r >= 2 ? estimate_prev_root(view) : RootEstimate::unknown();
  return alg2_round(prev, received, prev_root, r);
}

}  // namespace dyncon
