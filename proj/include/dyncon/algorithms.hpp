#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dyncon/detection.hpp"
#include "dyncon/engine.hpp"

namespace dyncon {

/// One row of the serialized trace.
struct TraceRecord {
  Round round = 0;
  ProcessId pid = 0;
  Value proposal = 0;
  std::optional<bool> locked;
  std::optional<Round> lock_round;
  std::vector<Round> queue;
  bool decided = false;
  std::optional<Value> decision;
  RootEstimate detected_root;
  bool has_vote = false;  ///< voting algorithm rows carry m
  std::optional<Value> vote;
};

// ---------------------------------------------------------------------------
// Short-stability algorithm (◊STABLE_D(D+1), known bound N >= n).

/// Lower end of the window of states checked before deciding.
enum class DecisionWindow {
  Literal,  ///< s >= r - (D+2N)^2
  Npd,      ///< s >= r - N(D+2N)
};

/// When the decision test runs relative to the lock round ℓ.
enum class DecisionGuard {
  Exact,    ///< only at r = ℓ + N(D+2N)
  AtLeast,  ///< at every r >= ℓ + N(D+2N) until decided
};

/// Whether ⊥ estimates count as an element of T.
enum class RootSetMode { KnownOnly, WithUnknown };

/// Which violating state bounds the queue pruning on back-off.
enum class PruneWitness { Max, Min };

struct Alg1Params {
  int bound_n = 1;   ///< N
  int diameter = 1;  ///< D
  DecisionWindow decision_window = DecisionWindow::Npd;
  PruneWitness prune = PruneWitness::Max;
  DecisionGuard decision_guard = DecisionGuard::AtLeast;
  RootSetMode root_set = RootSetMode::WithUnknown;
  // Mutations for checker-sensitivity tests.
  bool skip_adoption = false;  ///< never adopt a single locked value from S'
  bool skip_backoff = false;   ///< never back off on contradicting states
  bool unguarded_backoff = false;  ///< back off without waiting N rounds after the lock

  /// N(D+2N): distance from the lock round to the decision round.
  Round decision_delay() const { return bound_n * (diameter + 2 * bound_n); }
};

struct Alg1State {
  Value proposal = 0;
  bool locked = true;
  Round lock_round = 1;
  std::vector<Round> queue;  ///< strictly increasing
  std::optional<Value> decision;
  Round decided_round = 0;
  RootEstimate detected_root;  ///< Root^r_p(r-D) used this round

  friend bool operator==(const Alg1State&, const Alg1State&) = default;
  TraceRecord record(Round r, ProcessId p) const;
};

class Alg1 {
 public:
  using State = Alg1State;

  explicit Alg1(Alg1Params params);

  State initial(ProcessId p, Value input, int n) const;
  State step(const State& prev, const ProcessView<State>& view) const;
  const Alg1Params& params() const { return params_; }

 private:
  Alg1Params params_;
};

// ---------------------------------------------------------------------------
// Compound-graph voting algorithm (◊STAR(2) ∩ NON-SPLIT).

struct Alg2State {
  Value proposal = 0;
  std::optional<Value> vote;  ///< m; nullopt is ⊥
  std::optional<Value> decision;
  Round decided_round = 0;
  RootEstimate detected_root;  ///< Root^r_p(r-1) used this round

  friend bool operator==(const Alg2State&, const Alg2State&) = default;
  TraceRecord record(Round r, ProcessId p) const;
};

/// (sender, m_q, Proposal_q) as received in one round.
struct VoteMessage {
  ProcessId sender = 0;
  std::optional<Value> vote;
  Value proposal = 0;
};

/// Value a process adopts from a detected previous root: the vote of the
/// lowest-id root member carrying one, otherwise the largest proposal among
/// received root members. nullopt when no root member's message arrived.
std::optional<Value> alg2_value_of_root(const std::vector<VoteMessage>& received, ProcessSet root);

/// One round of the voting rule on already collected messages. A decided
/// process keeps its state.
Alg2State alg2_round(const Alg2State& state, const std::vector<VoteMessage>& received, const RootEstimate& prev_root,
                     Round r);

class Alg2 {
 public:
  using State = Alg2State;

  State initial(ProcessId p, Value input, int n) const;
  State step(const State& prev, const ProcessView<State>& view) const;
};

}  // namespace dyncon
