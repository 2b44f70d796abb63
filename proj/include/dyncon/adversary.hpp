#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyncon/graph.hpp"

namespace dyncon {

enum class AdversaryKind { StableD, Rooted, NonSplitStar, Scripted };

/// Parameters of a generated adversary sequence.
struct AdversarySpec {
  int n = 0;
  int diameter = 1;   ///< D
  int stability = 2;  ///< x, or y for NonSplitStar
  AdversaryKind kind = AdversaryKind::StableD;
  /// First round of the designated stable window; drawn from
  /// [1, max_stability_start] when unset.
  std::optional<Round> stability_start;
  Round max_stability_start = 0;  ///< 0 means 3n
  Round horizon = 0;
  std::uint64_t seed = 0;
  std::string scenario;  ///< Scripted only
};

/// A maximal run of consecutive rounds whose graphs share root `root`.
struct StableWindow {
  Round start = 0;
  Round end = 0;
  ProcessSet root;
  int length() const { return end - start + 1; }
  friend bool operator==(const StableWindow&, const StableWindow&) = default;
};

struct DiamViolation {
  Round window_start = 0;  ///< r1: the window covers rounds r1 .. r1+D-1
  ProcessId process = 0;   ///< a p with R not inside CP(p, r1-1, r1+D-1)
  ProcessSet root;
};

struct SplitViolation {
  Round round = 0;
  ProcessId p = 0;
  ProcessId q = 0;
};

struct MembershipReport {
  int diameter = 0;
  int stability = 0;
  bool rooted_ok = true;
  std::optional<Round> first_unrooted;
  bool diam_ok = true;
  std::optional<DiamViolation> diam_violation;
  std::vector<StableWindow> stability_windows;  ///< all maximal runs
  bool stability_ok = false;                    ///< some run has length >= x
  bool nonsplit_ok = true;
  std::optional<SplitViolation> split_violation;
  std::vector<StableWindow> star_windows;  ///< star runs of any length

  /// Membership in ROOTED ∩ DIAM(D) ∩ ◊STABILITY(x).
  bool member() const { return rooted_ok && diam_ok && stability_ok; }
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element i is whether round i+1 is rooted.
std::vector<bool> check_rooted(const GraphSequence& seq);

/// First window of D consecutive same-root graphs whose root does not reach
/// every process within the window.
std::optional<DiamViolation> check_diam(const GraphSequence& seq, int diameter);

/// All maximal runs of rooted rounds with an unchanged root.
std::vector<StableWindow> stable_runs(const GraphSequence& seq);

/// The maximal runs of length >= x.
std::vector<StableWindow> check_stability(const GraphSequence& seq, int x);

/// Non-split check. With honor_loopless, processes marked loopless cannot
/// act as their own common in-neighbour.
std::optional<SplitViolation> check_nonsplit(const GraphSequence& seq, bool honor_loopless = false);
bool is_nonsplit(const CommGraph& g, bool honor_loopless = false);

/// Every member of `centers` has an edge to every other process.
bool contains_star_union(const CommGraph& g, ProcessSet centers);

/// Exactly the union of loop-free-leaf stars around `centers`: explicit
/// loop reading, so every non-center process must be marked loopless.
bool is_uniform_star_union(const CommGraph& g, ProcessSet centers);

/// Maximal runs of length >= y with a stable root whose members all have
/// edges to every other process.
std::vector<StableWindow> check_star_window(const GraphSequence& seq, int y);

MembershipReport membership(const GraphSequence& seq, int diameter, int x);

/// Draws a rooted graph with root exactly `root`. `density` in [0, 1] is
/// the probability of each optional edge; at 1 every root member has an
/// edge to every other process.
CommGraph random_rooted_graph(int n, ProcessSet root, double density, std::mt19937_64& rng);

/// A uniformly drawn nonempty subset of the n processes, different from
/// `avoid` whenever another subset exists.
ProcessSet random_root_set(int n, ProcessSet avoid, std::mt19937_64& rng);

struct GeneratedSequence {
  GraphSequence sequence;
  StableWindow window;  ///< designated stable window
};

/// Sequence in ROOTED ∩ DIAM(D) ∩ ◊STABILITY(x) with a designated window of
/// exactly x rounds. Self-validates; throws GenerationError on failure.
GeneratedSequence generate_stable(const AdversarySpec& spec);

/// ROOTED only: a fresh random root every round, no designated window.
GraphSequence generate_rooted(int n, Round horizon, std::uint64_t seed);

/// Round r of the result is G^{(r-1)(n-1)+1} ∘ ... ∘ G^{r(n-1)}. A trailing
/// partial block is dropped and its length returned through `dropped`.
GraphSequence compound_sequence(const GraphSequence& seq, int* dropped = nullptr);

struct ScenarioParams {
  int n = 0;
  int diameter = 1;
  Round tau = 0;
  Round horizon = 0;
  /// Dotted edges are present in the first round of their bracket.
  bool dotted_present_first = true;
  std::uint64_t seed = 0;
};

/// Scripted sequences from the lower-bound constructions. "thm1" yields
/// {sigma1, sigma2}; every other name yields a single sequence.
/// Names: thm1, thm1-sigma1, thm1-sigma2, dimposs-Ga..Gd, lossy-link.
std::vector<GraphSequence> scenario(const std::string& name, const ScenarioParams& params);

const std::vector<std::string>& scenario_names();

}  // namespace dyncon
