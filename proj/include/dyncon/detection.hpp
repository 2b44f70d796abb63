#pragma once

#include <optional>

#include "dyncon/engine.hpp"

namespace dyncon {

/// Root^r_p(s): either unknown (⊥) or a root set.
struct RootEstimate {
  std::optional<ProcessSet> root;

  static RootEstimate unknown() { return {}; }
  static RootEstimate known(ProcessSet r) { return {r}; }
  bool is_known() const { return root.has_value(); }
  friend bool operator==(const RootEstimate&, const RootEstimate&) = default;
};

/// Estimate of Root(G^s) from the in-neighbourhood reports in `view`.
/// Known(R) iff R is the unique set whose members all reported their
/// round-s in-neighbourhoods, which lie inside R, and which is strongly
/// connected under those reports. Requires 1 <= s <= view.round().
RootEstimate estimate_root(const KnowledgeView& view, Round s);

/// Root^r_p(r-1), used by the compound-graph voting algorithm; r >= 2.
RootEstimate estimate_prev_root(const KnowledgeView& view);

}  // namespace dyncon
