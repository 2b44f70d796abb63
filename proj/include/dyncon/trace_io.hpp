#pragma once

#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"

#include "dyncon/algorithms.hpp"
#include "dyncon/atomic_file.hpp"

namespace dyncon {

nlohmann::json to_json(const TraceRecord& rec);
nlohmann::json to_json(const RootEstimate& est);

/// One JSON object per (round, process), rounds 1..R, pid ascending.
template <class State>
void write_trace(std::ostream& out, const Execution<State>& exec) {
  for (Round r = 1; r <= exec.rounds(); ++r) {
    for (ProcessId p = 0; p < exec.process_count(); ++p) {
      out << to_json(exec.state(p, r).record(r, p)).dump() << '\n';
    }
  }
}

template <class State>
void save_trace(const std::string& path, const Execution<State>& exec) {
  write_atomically(path, [&](std::ostream& out) { write_trace(out, exec); });
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Hash of the serialized trace; equal hashes for bit-identical traces.
template <class State>
std::uint64_t trace_hash(const Execution<State>& exec) {
  std::ostringstream out;
  write_trace(out, exec);
  return fnv1a(out.str());
}

}  // namespace dyncon
