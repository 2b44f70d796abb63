#pragma once

#include <utility>
#include <vector>

#include "dyncon/process_set.hpp"

namespace dyncon {

using Edge = std::pair<ProcessId, ProcessId>;

/// One round's communication graph. Self-loops are never stored but are
/// part of the semantics of every query. Edges are kept as in-neighbour
/// masks so compound products and causal pasts are word operations.
class CommGraph {
 public:
  CommGraph() = default;
  explicit CommGraph(int n);
  CommGraph(int n, const std::vector<Edge>& edges);

  int size() const { return n_; }

  /// Adds (from, to); a self-loop request is ignored.
  void add_edge(ProcessId from, ProcessId to);
  void remove_edge(ProcessId from, ProcessId to);
  bool has_edge(ProcessId from, ProcessId to) const;

  /// Stored in-neighbours of p, without p itself.
  ProcessSet strict_in(ProcessId p) const { return in_[static_cast<std::size_t>(p)]; }
  /// Out-neighbours of p, without p itself.
  ProcessSet strict_out(ProcessId p) const;

  /// Edges in (from, to) lexicographic order.
  std::vector<Edge> edges() const;

  /// Processes declared to have no self-loop under the explicit-loop
  /// reading used by the star-union checks. Ignored everywhere else.
  ProcessSet loopless() const { return loopless_; }
  void set_loopless(ProcessSet s) { loopless_ = s; }

  friend bool operator==(const CommGraph&, const CommGraph&) = default;

 private:
  void check(ProcessId p) const;

  int n_ = 0;
  std::vector<ProcessSet> in_;
  ProcessSet loopless_;
};

/// A finite prefix of a graph sequence; round r (1-based) is graphs()[r-1].
class GraphSequence {
 public:
  GraphSequence() = default;
  explicit GraphSequence(int n) : n_(n) {}
  GraphSequence(int n, std::vector<CommGraph> graphs);

  int process_count() const { return n_; }
  int rounds() const { return static_cast<int>(graphs_.size()); }
  bool empty() const { return graphs_.empty(); }

  /// Graph of round r, 1 <= r <= rounds().
  const CommGraph& at(Round r) const;
  CommGraph& at(Round r);
  void push_back(CommGraph g);
  void pop_back() { graphs_.pop_back(); }
  const std::vector<CommGraph>& graphs() const { return graphs_; }

  friend bool operator==(const GraphSequence&, const GraphSequence&) = default;

 private:
  int n_ = 0;
  std::vector<CommGraph> graphs_;
};

/// IN_p(g), self-loop included.
ProcessSet in_neighborhood(const CommGraph& g, ProcessId p);

/// All root components (source SCCs of the condensation), ordered by
/// smallest member.
std::vector<ProcessSet> root_components(const CommGraph& g);

bool is_rooted(const CommGraph& g);

/// Root(g) for a rooted graph; empty set when g is not rooted.
ProcessSet root_of(const CommGraph& g);

/// g1 ∘ g2: (p,q) iff p reaches q by one g1 hop followed by one g2 hop.
CommGraph compound(const CommGraph& g1, const CommGraph& g2);

/// CP(p, a, b): processes whose round-a state reached p by the end of round b.
ProcessSet causal_past(const GraphSequence& seq, ProcessId p, Round a, Round b);

/// CP(p, a, b) for every p at once, indexed by p.
std::vector<ProcessSet> causal_past_all(const GraphSequence& seq, Round a, Round b);

/// Edges (center, q) for all q != center. Without leaf loops the leaves are
/// marked loopless for the star-union checks.
CommGraph star(ProcessId center, int n, bool with_leaf_loops = true);

}  // namespace dyncon
