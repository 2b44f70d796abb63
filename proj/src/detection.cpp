#include "dyncon/detection.hpp"

#include <stdexcept>
#include <string>

namespace dyncon {

RootEstimate estimate_root(const KnowledgeView& view, Round s) {
  if (s < 1 || s > view.round()) {
    throw std::invalid_argument("root estimate for round " + std::to_string(s) + " at round " +
                                std::to_string(view.round()));
  }
  const int n = view.process_count();
  // Partial graph of everything reported for round s. Unreported processes
  // have no in-edges here, so they form singleton sources that are filtered
  // out below; a source SCC made of reporters is closed under true in-edges.
  CommGraph partial(n);
  ProcessSet reporters;
  for (ProcessId q = 0; q < n; ++q) {
    if (auto in = view.in_edges(q, s)) {
      reporters.insert(q);
      for (ProcessId u : *in) partial.add_edge(u, q);
    }
  }
  if (reporters.empty()) return RootEstimate::unknown();

  std::optional<ProcessSet> found;
  for (ProcessSet comp : root_components(partial)) {
    if (!comp.is_subset_of(reporters)) continue;
    if (found) return RootEstimate::unknown();
    found = comp;
  }
  return found ? RootEstimate::known(*found) : RootEstimate::unknown();
}

RootEstimate estimate_prev_root(const KnowledgeView& view) {
  if (view.round() < 2) throw std::invalid_argument("previous-round root estimate needs r >= 2");
  return estimate_root(view, view.round() - 1);
}

}  // namespace dyncon
