#include "dyncon/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dyncon {

CommGraph::CommGraph(int n) : n_(n) {
  require_process_count(n);
  in_.resize(static_cast<std::size_t>(n));
}

CommGraph::CommGraph(int n, const std::vector<Edge>& edges) : CommGraph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

void CommGraph::check(ProcessId p) const {
  if (p < 0 || p >= n_) {
    throw std::invalid_argument("process id " + std::to_string(p) + " out of range for n=" +
                                std::to_string(n_));
  }
}

void CommGraph::add_edge(ProcessId from, ProcessId to) {
  check(from);
  check(to);
  if (from != to) in_[static_cast<std::size_t>(to)].insert(from);
}

void CommGraph::remove_edge(ProcessId from, ProcessId to) {
  check(from);
  check(to);
  in_[static_cast<std::size_t>(to)].erase(from);
}

bool CommGraph::has_edge(ProcessId from, ProcessId to) const {
  check(from);
  check(to);
  return from == to || in_[static_cast<std::size_t>(to)].contains(from);
}

ProcessSet CommGraph::strict_out(ProcessId p) const {
  check(p);
  ProcessSet out;
  for (ProcessId q = 0; q < n_; ++q) {
    if (in_[static_cast<std::size_t>(q)].contains(p)) out.insert(q);
  }
  return out;
}

std::vector<Edge> CommGraph::edges() const {
  std::vector<Edge> out;
  for (ProcessId u = 0; u < n_; ++u) {
    for (ProcessId v = 0; v < n_; ++v) {
      if (in_[static_cast<std::size_t>(v)].contains(u)) out.emplace_back(u, v);
    }
  }
  return out;
}

GraphSequence::GraphSequence(int n, std::vector<CommGraph> graphs) : n_(n), graphs_(std::move(graphs)) {
  for (const auto& g : graphs_) {
    if (g.size() != n_) throw std::invalid_argument("graph size does not match sequence size");
  }
}

const CommGraph& GraphSequence::at(Round r) const {
  if (r < 1 || r > rounds()) {
    throw std::out_of_range("round " + std::to_string(r) + " outside [1, " + std::to_string(rounds()) + "]");
  }
  return graphs_[static_cast<std::size_t>(r - 1)];
}

CommGraph& GraphSequence::at(Round r) {
  return const_cast<CommGraph&>(std::as_const(*this).at(r));
}

void GraphSequence::push_back(CommGraph g) {
  if (g.size() != n_) throw std::invalid_argument("graph size does not match sequence size");
  graphs_.push_back(std::move(g));
}

ProcessSet in_neighborhood(const CommGraph& g, ProcessId p) {
  if (p < 0 || p >= g.size()) {
    throw std::invalid_argument("process id " + std::to_string(p) + " out of range");
  }
  ProcessSet s = g.strict_in(p);
  s.insert(p);
  return s;
}

namespace {

// Iterative Tarjan over in-edges reversed to out-edges; returns component id per vertex.
std::vector<int> strongly_connected(const CommGraph& g, int& count) {
  const int n = g.size();
  std::vector<ProcessSet> out(static_cast<std::size_t>(n));
  for (ProcessId v = 0; v < n; ++v) {
    for (ProcessId u : g.strict_in(v)) out[static_cast<std::size_t>(u)].insert(v);
  }
  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0),
      comp(static_cast<std::size_t>(n), -1);
  std::vector<ProcessId> stack;
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  int next = 0;
  count = 0;

  struct Frame {
    ProcessId v;
    ProcessSet pending;
  };
  for (ProcessId root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] >= 0) continue;
    std::vector<Frame> frames;
    auto open = [&](ProcessId v) {
      index[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = next++;
      stack.push_back(v);
      on_stack[static_cast<std::size_t>(v)] = true;
      frames.push_back({v, out[static_cast<std::size_t>(v)]});
    };
    open(root);
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto v = static_cast<std::size_t>(f.v);
      if (!f.pending.empty()) {
        ProcessId w = f.pending.front();
        f.pending.erase(w);
        const auto wi = static_cast<std::size_t>(w);
        if (index[wi] < 0) {
          open(w);
        } else if (on_stack[wi]) {
          low[v] = std::min(low[v], index[wi]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        ProcessId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = false;
          comp[static_cast<std::size_t>(w)] = count;
        } while (w != f.v);
        ++count;
      }
      const int finished_low = low[v];
      frames.pop_back();
      if (!frames.empty()) {
        auto& parent = low[static_cast<std::size_t>(frames.back().v)];
        parent = std::min(parent, finished_low);
      }
    }
  }
  return comp;
}

}  // namespace

std::vector<ProcessSet> root_components(const CommGraph& g) {
  const int n = g.size();
  int count = 0;
  const auto comp = strongly_connected(g, count);
  std::vector<ProcessSet> members(static_cast<std::size_t>(count));
  std::vector<bool> has_outside_in(static_cast<std::size_t>(count), false);
  for (ProcessId v = 0; v < n; ++v) {
    const auto c = static_cast<std::size_t>(comp[static_cast<std::size_t>(v)]);
    members[c].insert(v);
    for (ProcessId u : g.strict_in(v)) {
      if (comp[static_cast<std::size_t>(u)] != comp[static_cast<std::size_t>(v)]) has_outside_in[c] = true;
    }
  }
  std::vector<ProcessSet> roots;
  for (std::size_t c = 0; c < members.size(); ++c) {
    if (!has_outside_in[c]) roots.push_back(members[c]);
  }
  std::sort(roots.begin(), roots.end(), [](ProcessSet a, ProcessSet b) { return a.front() < b.front(); });
  return roots;
}

bool is_rooted(const CommGraph& g) { return root_components(g).size() == 1; }

ProcessSet root_of(const CommGraph& g) {
  auto roots = root_components(g);
  return roots.size() == 1 ? roots.front() : ProcessSet{};
}

CommGraph compound(const CommGraph& g1, const CommGraph& g2) {
  if (g1.size() != g2.size()) throw std::invalid_argument("compound of graphs with different sizes");
  const int n = g1.size();
  CommGraph out(n);
  for (ProcessId q = 0; q < n; ++q) {
    ProcessSet in;
    for (ProcessId mid : in_neighborhood(g2, q)) in |= in_neighborhood(g1, mid);
    for (ProcessId p : in) out.add_edge(p, q);
  }
  return out;
}

std::vector<ProcessSet> causal_past_all(const GraphSequence& seq, Round a, Round b) {
  if (a > b) throw std::invalid_argument("causal past needs a <= b");
  if (a < 0 || b > seq.rounds()) throw std::invalid_argument("causal past rounds outside the sequence");
  const int n = seq.process_count();
  // Fold backwards: cp[p] after processing round k is IN_p(G^k ∘ ... ∘ G^b).
  std::vector<ProcessSet> cp(static_cast<std::size_t>(n));
  for (ProcessId p = 0; p < n; ++p) cp[static_cast<std::size_t>(p)] = ProcessSet::single(p);
  for (Round k = b; k > a; --k) {
    const CommGraph& g = seq.at(k);
    for (auto& s : cp) {
      ProcessSet next;
      for (ProcessId q : s) next |= in_neighborhood(g, q);
      s = next;
    }
  }
  return cp;
}

ProcessSet causal_past(const GraphSequence& seq, ProcessId p, Round a, Round b) {
  if (p < 0 || p >= seq.process_count()) throw std::invalid_argument("process id out of range");
  return causal_past_all(seq, a, b)[static_cast<std::size_t>(p)];
}

CommGraph star(ProcessId center, int n, bool with_leaf_loops) {
  CommGraph g(n);
  if (center < 0 || center >= n) throw std::invalid_argument("star center out of range");
  for (ProcessId q = 0; q < n; ++q) g.add_edge(center, q);
  if (!with_leaf_loops) g.set_loopless(ProcessSet::all(n) - ProcessSet::single(center));
  return g;
}

}  // namespace dyncon
