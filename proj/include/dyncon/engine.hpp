#pragma once

#include <algorithm>
#include <concepts>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyncon/graph.hpp"

namespace dyncon {

inline constexpr Round kNever = -1;

/// Round-indexed record of what every process reported: in_edges[s][q] is
/// IN_q(G^s) (self included) for s >= 1; row 0 is empty.
struct EdgeHistory {
  std::vector<std::vector<ProcessSet>> in_edges;
};

/// What one process knows at a given round. In a full-information protocol
/// a process knows q^s exactly for s up to the last round it heard from q,
/// so the view is one "last known state" round per process over the shared
/// history. `floor` > 0 hides states older than that round (bounded mode).
class KnowledgeView {
 public:
  KnowledgeView(const EdgeHistory& edges, ProcessId owner, Round round, std::span<const Round> last, Round floor = 0)
      : edges_(&edges), owner_(owner), round_(round), last_(last), floor_(floor) {}

  ProcessId owner() const { return owner_; }
  Round round() const { return round_; }
  int process_count() const { return static_cast<int>(last_.size()); }

  /// Largest s with q^s known, kNever if none. While the owner computes
  /// round r its own latest state is r-1.
  Round last_known_state(ProcessId q) const { return last_[static_cast<std::size_t>(q)]; }

  /// lastround_q: the owner's own value is the current round.
  Round last_heard(ProcessId q) const { return q == owner_ ? round_ : last_known_state(q); }

  bool knows_state(ProcessId q, Round s) const {
    return s >= 0 && s >= floor_ && s <= last_known_state(q);
  }

  /// IN_q(G^s) as reported by q, if the owner has that report.
  std::optional<ProcessSet> in_edges(ProcessId q, Round s) const {
    if (s < 1 || s < floor_ || s > round_) return std::nullopt;
    if (s <= last_known_state(q) || (q == owner_ && s == round_)) {
      return edges_->in_edges[static_cast<std::size_t>(s)][static_cast<std::size_t>(q)];
    }
    return std::nullopt;
  }

  Round floor() const { return floor_; }
  std::span<const Round> known_prefix() const { return last_; }

 private:
  const EdgeHistory* edges_;
  ProcessId owner_;
  Round round_;
  std::span<const Round> last_;
  Round floor_;
};

template <class State>
struct History : EdgeHistory {
  std::vector<std::vector<State>> states;  ///< states[s][q] = q^s, s >= 0
};

template <class State>
class ProcessView : public KnowledgeView {
 public:
  ProcessView(const History<State>& h, ProcessId owner, Round round, std::span<const Round> last, Round floor = 0)
      : KnowledgeView(h, owner, round, last, floor), history_(&h) {}

  /// q^s; only valid when knows_state(q, s).
  const State& state(ProcessId q, Round s) const {
    if (!knows_state(q, s)) {
      throw std::logic_error("state of process " + std::to_string(q) + " at round " + std::to_string(s) +
                             " is not in the view of " + std::to_string(owner()));
    }
    return history_->states[static_cast<std::size_t>(s)][static_cast<std::size_t>(q)];
  }

 private:
  const History<State>* history_;
};

class ExecutionError : public std::runtime_error {
 public:
  ExecutionError(Round round, ProcessId process, const std::string& what)
      : std::runtime_error("round " + std::to_string(round) + ", process " + std::to_string(process) + ": " + what),
        round_(round),
        process_(process) {}
  Round round() const { return round_; }
  ProcessId process() const { return process_; }

 private:
  Round round_;
  ProcessId process_;
};

template <class A>
concept RoundAlgorithm = requires(const A& alg, const typename A::State& s,
                                  const ProcessView<typename A::State>& view, ProcessId p, Value x, int n) {
  { alg.initial(p, x, n) } -> std::same_as<typename A::State>;
  { alg.step(s, view) } -> std::same_as<typename A::State>;
};

struct EngineOptions {
  /// When > 0 views only retain states of the last `retain_rounds` rounds.
  Round retain_rounds = 0;
};

/// Non-owning, algorithm-independent access to the views of an execution.
struct KnowledgeTrace {
  const GraphSequence* sequence = nullptr;
  const EdgeHistory* edges = nullptr;
  const std::vector<std::vector<Round>>* views = nullptr;
  Round retain_rounds = 0;

  int process_count() const { return sequence->process_count(); }
  Round rounds() const { return static_cast<Round>(views->size()) - 1; }
  /// p's view at the end of round r.
  KnowledgeView view(ProcessId p, Round r) const {
    const auto n = static_cast<std::size_t>(process_count());
    auto row = std::span<const Round>((*views)[static_cast<std::size_t>(r)]).subspan(static_cast<std::size_t>(p) * n, n);
    return KnowledgeView(*edges, p, r, row, retain_rounds > 0 ? r - retain_rounds : 0);
  }
};

template <class State>
struct Execution {
  std::vector<Value> inputs;
  GraphSequence sequence;
  History<State> history;
  /// views[r][p*n + q]: last state round of q known to p after round r.
  std::vector<std::vector<Round>> views;
  EngineOptions options;

  int process_count() const { return sequence.process_count(); }
  Round rounds() const { return static_cast<Round>(history.states.size()) - 1; }
  const State& state(ProcessId p, Round r) const {
    return history.states[static_cast<std::size_t>(r)][static_cast<std::size_t>(p)];
  }
  std::span<const Round> known_prefix(ProcessId p, Round r) const {
    const auto n = static_cast<std::size_t>(process_count());
    return std::span<const Round>(views[static_cast<std::size_t>(r)]).subspan(static_cast<std::size_t>(p) * n, n);
  }
  Round floor_at(Round r) const { return options.retain_rounds > 0 ? r - options.retain_rounds : 0; }
  /// p's view at the end of round r.
  ProcessView<State> view(ProcessId p, Round r) const {
    return ProcessView<State>(history, p, r, known_prefix(p, r), floor_at(r));
  }
  KnowledgeTrace knowledge() const { return {&sequence, &history, &views, options.retain_rounds}; }
};

/// Lock-step execution of `alg` on `seq`. Each round every process merges
/// the views of its in-neighbours (itself included), then computes.
template <RoundAlgorithm A>
Execution<typename A::State> run(const A& alg, const std::vector<Value>& inputs, const GraphSequence& seq,
                                 EngineOptions options = {}) {
  using State = typename A::State;
  const int n = seq.process_count();
  if (static_cast<int>(inputs.size()) != n) {
    throw std::invalid_argument("expected " + std::to_string(n) + " inputs, got " + std::to_string(inputs.size()));
  }
  const auto un = static_cast<std::size_t>(n);

  Execution<State> exec;
  exec.inputs = inputs;
  exec.sequence = seq;
  exec.options = options;
  exec.history.in_edges.emplace_back(un);
  auto& initial = exec.history.states.emplace_back();
  initial.reserve(un);
  for (ProcessId p = 0; p < n; ++p) initial.push_back(alg.initial(p, inputs[static_cast<std::size_t>(p)], n));

  std::vector<Round> last(un * un, kNever);
  for (std::size_t p = 0; p < un; ++p) last[p * un + p] = 0;
  exec.views.push_back(last);

  std::vector<Round> merged(un * un);
  for (Round r = 1; r <= seq.rounds(); ++r) {
    const CommGraph& g = seq.at(r);
    auto& reported = exec.history.in_edges.emplace_back(un);
    for (ProcessId p = 0; p < n; ++p) reported[static_cast<std::size_t>(p)] = in_neighborhood(g, p);

    for (std::size_t p = 0; p < un; ++p) {
      Round* row = &merged[p * un];
      std::copy_n(&last[p * un], un, row);
      for (ProcessId u : g.strict_in(static_cast<ProcessId>(p))) {
        const Round* src = &last[static_cast<std::size_t>(u) * un];
        for (std::size_t q = 0; q < un; ++q) row[q] = std::max(row[q], src[q]);
      }
    }

    const Round floor = options.retain_rounds > 0 ? r - options.retain_rounds : 0;
    std::vector<State> next;
    next.reserve(un);
    const auto& prev = exec.history.states.back();
    for (ProcessId p = 0; p < n; ++p) {
      const auto up = static_cast<std::size_t>(p);
      ProcessView<State> view(exec.history, p, r, std::span<const Round>(&merged[up * un], un), floor);
      try {
        next.push_back(alg.step(prev[up], view));
      } catch (const std::exception& e) {
        throw ExecutionError(r, p, e.what());
      }
    }
    exec.history.states.push_back(std::move(next));
    for (std::size_t p = 0; p < un; ++p) merged[p * un + p] = r;
    last.swap(merged);
    exec.views.push_back(last);
  }
  return exec;
}

/// lastround_q of p's view at the end of round r.
template <class State>
Round last_heard(const Execution<State>& exec, ProcessId p, ProcessId q, Round r) {
  return exec.view(p, r).last_heard(q);
}

/// First round in 1..through where p's state or view differs between the two
/// executions; nullopt when they agree throughout.
template <class State>
std::optional<Round> first_view_divergence(const Execution<State>& a, const Execution<State>& b, ProcessId p,
                                           Round through) {
  if (a.process_count() != b.process_count()) throw std::invalid_argument("executions have different sizes");
  if (through > a.rounds() || through > b.rounds()) throw std::invalid_argument("executions do not cover round");
  const int n = a.process_count();
  for (Round t = 1; t <= through; ++t) {
    if (!(a.state(p, t) == b.state(p, t))) return t;
    const auto va = a.view(p, t);
    const auto vb = b.view(p, t);
    for (ProcessId q = 0; q < n; ++q) {
      if (va.last_known_state(q) != vb.last_known_state(q)) return t;
      for (Round s = std::max<Round>(0, va.floor()); s <= va.last_known_state(q); ++s) {
        if (!(a.state(q, s) == b.state(q, s))) return t;
        if (va.in_edges(q, s) != vb.in_edges(q, s)) return t;
      }
    }
  }
  return std::nullopt;
}

template <class State>
bool views_equal_until(const Execution<State>& a, const Execution<State>& b, ProcessId p, Round through) {
  return !first_view_divergence(a, b, p, through).has_value();
}

}  // namespace dyncon
