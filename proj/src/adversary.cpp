#include "dyncon/adversary.hpp"

#include <algorithm>
#include <numeric>

namespace dyncon {

std::vector<bool> check_rooted(const GraphSequence& seq) {
  std::vector<bool> out;
  out.reserve(static_cast<std::size_t>(seq.rounds()));
  for (const auto& g : seq.graphs()) out.push_back(is_rooted(g));
  return out;
}

std::vector<StableWindow> stable_runs(const GraphSequence& seq) {
  std::vector<StableWindow> runs;
  for (Round r = 1; r <= seq.rounds(); ++r) {
    const ProcessSet root = root_of(seq.at(r));
    if (root.empty()) continue;
    if (!runs.empty() && runs.back().end == r - 1 && runs.back().root == root) {
      runs.back().end = r;
    } else {
      runs.push_back({r, r, root});
    }
  }
  return runs;
}

std::vector<StableWindow> check_stability(const GraphSequence& seq, int x) {
  auto runs = stable_runs(seq);
  std::erase_if(runs, [x](const StableWindow& w) { return w.length() < x; });
  return runs;
}

namespace {

// Checks the D-window r1 .. r1+D-1 whose graphs all have root `root`.
std::optional<DiamViolation> check_diam_window(const GraphSequence& seq, Round r1, int diameter, ProcessSet root) {
  const auto cp = causal_past_all(seq, r1 - 1, r1 + diameter - 1);
  for (ProcessId p = 0; p < seq.process_count(); ++p) {
    if (!root.is_subset_of(cp[static_cast<std::size_t>(p)])) return DiamViolation{r1, p, root};
  }
  return std::nullopt;
}

}  // namespace

std::optional<DiamViolation> check_diam(const GraphSequence& seq, int diameter) {
  if (diameter < 1) throw std::invalid_argument("dynamic diameter must be >= 1");
  for (const auto& run : stable_runs(seq)) {
    for (Round r1 = run.start; r1 + diameter - 1 <= run.end; ++r1) {
      if (auto v = check_diam_window(seq, r1, diameter, run.root)) return v;
    }
  }
  return std::nullopt;
}

bool is_nonsplit(const CommGraph& g, bool honor_loopless) {
  const int n = g.size();
  std::vector<ProcessSet> in(static_cast<std::size_t>(n));
  for (ProcessId p = 0; p < n; ++p) {
    in[static_cast<std::size_t>(p)] = g.strict_in(p);
    if (!(honor_loopless && g.loopless().contains(p))) in[static_cast<std::size_t>(p)].insert(p);
  }
  for (ProcessId p = 0; p < n; ++p) {
    for (ProcessId q = p; q < n; ++q) {
      if (!in[static_cast<std::size_t>(p)].intersects(in[static_cast<std::size_t>(q)])) return false;
    }
  }
  return true;
}

std::optional<SplitViolation> check_nonsplit(const GraphSequence& seq, bool honor_loopless) {
  for (Round r = 1; r <= seq.rounds(); ++r) {
    const CommGraph& g = seq.at(r);
    if (is_nonsplit(g, honor_loopless)) continue;
    const int n = g.size();
    for (ProcessId p = 0; p < n; ++p) {
      for (ProcessId q = p; q < n; ++q) {
        ProcessSet a = g.strict_in(p), b = g.strict_in(q);
        if (!(honor_loopless && g.loopless().contains(p))) a.insert(p);
        if (!(honor_loopless && g.loopless().contains(q))) b.insert(q);
        if (!a.intersects(b)) return SplitViolation{r, p, q};
      }
    }
  }
  return std::nullopt;
}

bool contains_star_union(const CommGraph& g, ProcessSet centers) {
  const ProcessSet everyone = ProcessSet::all(g.size());
  for (ProcessId c : centers) {
    for (ProcessId q : everyone - ProcessSet::single(c)) {
      if (!g.strict_in(q).contains(c)) return false;
    }
  }
  return true;
}

bool is_uniform_star_union(const CommGraph& g, ProcessSet centers) {
  const ProcessSet everyone = ProcessSet::all(g.size());
  if (centers.empty() || !centers.is_subset_of(everyone)) return false;
  if (g.loopless() != everyone - centers) return false;
  for (ProcessId q = 0; q < g.size(); ++q) {
    if (g.strict_in(q) != centers - ProcessSet::single(q)) return false;
  }
  return true;
}

std::vector<StableWindow> check_star_window(const GraphSequence& seq, int y) {
  std::vector<StableWindow> out;
  for (const auto& run : stable_runs(seq)) {
    std::optional<StableWindow> cur;
    for (Round r = run.start; r <= run.end + 1; ++r) {
      const bool star = r <= run.end && contains_star_union(seq.at(r), run.root);
      if (star) {
        if (cur) {
          cur->end = r;
        } else {
          cur = StableWindow{r, r, run.root};
        }
      } else if (cur) {
        if (cur->length() >= y) out.push_back(*cur);
        cur.reset();
      }
    }
  }
  return out;
}

MembershipReport membership(const GraphSequence& seq, int diameter, int x) {
  MembershipReport rep;
  rep.diameter = diameter;
  rep.stability = x;
  const auto rooted = check_rooted(seq);
  for (std::size_t i = 0; i < rooted.size(); ++i) {
    if (!rooted[i]) {
      rep.rooted_ok = false;
      rep.first_unrooted = static_cast<Round>(i + 1);
      break;
    }
  }
  rep.diam_violation = check_diam(seq, diameter);
  rep.diam_ok = !rep.diam_violation.has_value();
  rep.stability_windows = stable_runs(seq);
  rep.stability_ok = std::any_of(rep.stability_windows.begin(), rep.stability_windows.end(),
                                 [x](const StableWindow& w) { return w.length() >= x; });
  rep.split_violation = check_nonsplit(seq);
  rep.nonsplit_ok = !rep.split_violation.has_value();
  rep.star_windows = check_star_window(seq, 1);
  return rep;
}

ProcessSet random_root_set(int n, ProcessSet avoid, std::mt19937_64& rng) {
  const std::uint64_t mask = ProcessSet::all(n).bits();
  // Only one nonempty subset exists for n = 1.
  for (;;) {
    const ProcessSet s(rng() & mask);
    if (s.empty()) continue;
    if (s == avoid && n > 1) continue;
    return s;
  }
}

CommGraph random_rooted_graph(int n, ProcessSet root, double density, std::mt19937_64& rng) {
  CommGraph g(n);
  std::bernoulli_distribution extra(std::clamp(density, 0.0, 1.0));
  const ProcessSet everyone = ProcessSet::all(n);

  std::vector<ProcessId> ring = root.to_vector();
  std::shuffle(ring.begin(), ring.end(), rng);
  for (std::size_t i = 0; ring.size() > 1 && i < ring.size(); ++i) {
    g.add_edge(ring[i], ring[(i + 1) % ring.size()]);
  }
  for (ProcessId u : root) {
    for (ProcessId v : root) {
      if (u != v && extra(rng)) g.add_edge(u, v);
    }
  }

  // Spanning arborescence over the non-root processes, hanging off the root.
  std::vector<ProcessId> rest = (everyone - root).to_vector();
  std::shuffle(rest.begin(), rest.end(), rng);
  std::vector<ProcessId> attached = root.to_vector();
  for (ProcessId v : rest) {
    std::uniform_int_distribution<std::size_t> pick(0, attached.size() - 1);
    g.add_edge(attached[pick(rng)], v);
    attached.push_back(v);
  }
  for (ProcessId u = 0; u < n; ++u) {
    for (ProcessId v : everyone - root) {
      if (u != v && extra(rng)) g.add_edge(u, v);
    }
  }
  if (density >= 1.0) {
    for (ProcessId u : root) {
      for (ProcessId v = 0; v < n; ++v) g.add_edge(u, v);
    }
  }
  return g;
}

namespace {

constexpr int kMaxRedraws = 100;
constexpr double kBaseDensity = 0.25;

double redraw_density(int attempt) {
  return kBaseDensity + (1.0 - kBaseDensity) * attempt / (kMaxRedraws - 1);
}

// Length of the same-root run ending at the last round of seq.
int trailing_run(const GraphSequence& seq) {
  const ProcessSet root = root_of(seq.at(seq.rounds()));
  int len = 0;
  for (Round r = seq.rounds(); r >= 1 && root_of(seq.at(r)) == root; --r) ++len;
  return len;
}

}  // namespace

GeneratedSequence generate_stable(const AdversarySpec& spec) {
  const int n = spec.n;
  const int d = spec.diameter;
  const int x = spec.stability;
  require_process_count(n);
  if (n < 2) throw std::invalid_argument("stable generation needs n >= 2");
  if (d < 1 || d > n - 1) throw std::invalid_argument("dynamic diameter must satisfy 1 <= D <= n-1");
  if (x < 1) throw std::invalid_argument("stability length must be >= 1");

  std::mt19937_64 rng(spec.seed);
  Round start = 0;
  if (spec.stability_start) {
    start = *spec.stability_start;
  } else {
    const Round hi = spec.max_stability_start > 0 ? spec.max_stability_start : 3 * n;
    start = std::uniform_int_distribution<Round>(1, hi)(rng);
  }
  if (start < 1) throw std::invalid_argument("stability start must be >= 1");
  const Round end = start + x - 1;
  if (spec.horizon < end) throw std::invalid_argument("horizon ends before the stable window");

  GraphSequence seq(n);
  ProcessSet prev_root;
  ProcessSet window_root;
  for (Round r = 1; r <= spec.horizon; ++r) {
    ProcessSet root;
    if (r == start) {
      window_root = random_root_set(n, prev_root, rng);
      root = window_root;
    } else if (r > start && r <= end) {
      root = window_root;
    } else {
      root = random_root_set(n, prev_root, rng);
    }
    bool placed = false;
    for (int attempt = 0; attempt < kMaxRedraws && !placed; ++attempt) {
      seq.push_back(random_rooted_graph(n, root, redraw_density(attempt), rng));
      const int run = trailing_run(seq);
      if (run < d || !check_diam_window(seq, r - d + 1, d, root)) {
        placed = true;
      } else {
        seq.pop_back();
      }
    }
    if (!placed) {
      throw GenerationError("could not satisfy DIAM(" + std::to_string(d) + ") at round " + std::to_string(r));
    }
    prev_root = root;
  }

  const auto rooted = check_rooted(seq);
  if (std::find(rooted.begin(), rooted.end(), false) != rooted.end()) {
    throw GenerationError("generated sequence is not ROOTED");
  }
  if (auto v = check_diam(seq, d)) {
    throw GenerationError("generated sequence violates DIAM(" + std::to_string(d) + ") at round " +
                          std::to_string(v->window_start));
  }
  const StableWindow designated{start, end, window_root};
  const auto windows = check_stability(seq, x);
  if (std::find(windows.begin(), windows.end(), designated) == windows.end()) {
    throw GenerationError("designated stable window missing from generated sequence");
  }
  return {std::move(seq), designated};
}

GraphSequence generate_rooted(int n, Round horizon, std::uint64_t seed) {
  require_process_count(n);
  std::mt19937_64 rng(seed);
  GraphSequence seq(n);
  for (Round r = 1; r <= horizon; ++r) {
    seq.push_back(random_rooted_graph(n, random_root_set(n, {}, rng), kBaseDensity, rng));
  }
  return seq;
}

GraphSequence compound_sequence(const GraphSequence& seq, int* dropped) {
  const int n = seq.process_count();
  if (n < 2) throw std::invalid_argument("compound sequences need n >= 2");
  const int block = n - 1;
  GraphSequence out(n);
  const int blocks = seq.rounds() / block;
  for (int b = 0; b < blocks; ++b) {
    CommGraph g = seq.at(b * block + 1);
    for (int k = 2; k <= block; ++k) g = compound(g, seq.at(b * block + k));
    out.push_back(std::move(g));
  }
  if (dropped) *dropped = seq.rounds() - blocks * block;
  return out;
}

// Scenario graphs. p_i of the constructions is process i-1.
namespace {

ProcessId P(int i) { return i - 1; }

void chain(CommGraph& g, int from, int to) {
  for (int i = from; i < to; ++i) g.add_edge(P(i), P(i + 1));
}

// Every process in p_1..p_depicted gets an edge to every process after it.
void to_undepicted(CommGraph& g, int depicted) {
  for (int u = 1; u <= depicted; ++u) {
    for (int v = depicted + 1; v <= g.size(); ++v) g.add_edge(P(u), P(v));
  }
}

bool dotted_present(Round r, Round bracket_start, bool present_first) {
  const bool even = (r - bracket_start) % 2 == 0;
  return present_first ? even : !even;
}

void check_thm1(const ScenarioParams& p) {
  if (p.diameter < 1) throw std::invalid_argument("thm1 needs D >= 1");
  if (p.n <= p.diameter + 2) throw std::invalid_argument("thm1 needs n > D+2");
  if (p.tau < 2 * p.diameter - 1) throw std::invalid_argument("thm1 needs tau >= 2D-1");
  if (p.horizon < p.tau + 1) throw std::invalid_argument("thm1 needs horizon > tau");
}

GraphSequence thm1_sigma1(const ScenarioParams& p) {
  const int n = p.n;
  const int d = p.diameter;
  GraphSequence seq(n);
  for (Round r = 1; r <= p.horizon; ++r) {
    CommGraph g(n);
    if (r <= 2 * d - 1) {
      chain(g, 1, d);
      g.add_edge(P(d), P(d + 1));
      g.add_edge(P(d), P(d + 2));
    } else {
      g.add_edge(P(d + 1), P(d + 2));
      if (dotted_present(r, 2 * d, p.dotted_present_first)) g.add_edge(P(d + 2), P(d + 1));
      g.add_edge(P(d + 2), P(1));
      chain(g, 1, d);
    }
    to_undepicted(g, d + 2);
    seq.push_back(std::move(g));
  }
  return seq;
}

GraphSequence thm1_sigma2(const ScenarioParams& p) {
  const int n = p.n;
  const int d = p.diameter;
  GraphSequence seq(n);
  for (Round r = 1; r <= p.horizon; ++r) {
    if (r > p.tau) {
      seq.push_back(star(P(n), n));
      continue;
    }
    CommGraph g(n);
    if (r <= 2 * d - 1) {
      chain(g, 1, d);
      g.add_edge(P(d), P(d + 1));
      g.add_edge(P(d), P(d + 2));
      chain(g, d + 2, n);
      if (r >= d && dotted_present(r, d, p.dotted_present_first)) g.add_edge(P(2), P(1));
    } else {
      g.add_edge(P(d + 1), P(d + 2));
      if (dotted_present(r, 2 * d, p.dotted_present_first)) g.add_edge(P(d + 2), P(d + 1));
      g.add_edge(P(d + 2), P(1));
      chain(g, 1, d);
      g.add_edge(P(d), P(d + 3));
      chain(g, d + 3, n);
    }
    seq.push_back(std::move(g));
  }
  return seq;
}

GraphSequence dimposs(char which, const ScenarioParams& p) {
  const int n = p.n;
  const int d = p.diameter;
  if (d < 1 || n < d + 1) throw std::invalid_argument("dimposs graphs need D >= 1 and n >= D+1");
  if (n < 2) throw std::invalid_argument("dimposs graphs need n >= 2");
  CommGraph g(n);
  switch (which) {
    case 'a':
      chain(g, 1, d + 1);
      break;
    case 'b':
      g.add_edge(P(2), P(1));
      chain(g, 1, d + 1);
      break;
    case 'c':
      g.add_edge(P(1), P(2));
      g.add_edge(P(2), P(1));
      if (d >= 2) {
        g.add_edge(P(1), P(3));
        chain(g, 3, d + 1);
      }
      break;
    case 'd':
      g.add_edge(P(2), P(1));
      if (d >= 2) {
        g.add_edge(P(1), P(3));
        chain(g, 3, d + 1);
      }
      break;
    default:
      throw std::invalid_argument("unknown dimposs graph");
  }
  to_undepicted(g, d + 1);
  const Round rounds = p.horizon > 0 ? p.horizon : d;
  return GraphSequence(n, std::vector<CommGraph>(static_cast<std::size_t>(rounds), g));
}

GraphSequence lossy_link(const ScenarioParams& p) {
  const int n = p.n;
  if (n < 2) throw std::invalid_argument("lossy-link needs n >= 2");
  if (p.horizon < 1) throw std::invalid_argument("lossy-link needs horizon >= 1");
  std::mt19937_64 rng(p.seed);
  std::bernoulli_distribution forward(0.5);
  GraphSequence seq(n);
  for (Round r = 1; r <= p.horizon; ++r) {
    CommGraph g(n);
    if (forward(rng)) {
      g.add_edge(0, 1);
    } else {
      g.add_edge(1, 0);
    }
    to_undepicted(g, 2);
    seq.push_back(std::move(g));
  }
  return seq;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"thm1",       "thm1-sigma1", "thm1-sigma2", "dimposs-Ga",
                                                 "dimposs-Gb", "dimposs-Gc",  "dimposs-Gd",  "lossy-link"};
  return names;
}

std::vector<GraphSequence> scenario(const std::string& name, const ScenarioParams& params) {
  require_process_count(params.n);
  if (name == "thm1" || name == "thm1-sigma1" || name == "thm1-sigma2") {
    check_thm1(params);
    if (name == "thm1-sigma1") return {thm1_sigma1(params)};
    if (name == "thm1-sigma2") return {thm1_sigma2(params)};
    return {thm1_sigma1(params), thm1_sigma2(params)};
  }
  if (name.size() == 10 && name.rfind("dimposs-G", 0) == 0) return {dimposs(name[9], params)};
  if (name == "lossy-link") return {lossy_link(params)};
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

}  // namespace dyncon
