#include "dyncon/trace_io.hpp"

namespace dyncon {

using nlohmann::json;

json to_json(const RootEstimate& est) {
  if (!est.is_known()) return nullptr;
  return est.root->to_vector();
}

json to_json(const TraceRecord& rec) {
  json j;
  j["round"] = rec.round;
  j["pid"] = rec.pid;
  j["proposal"] = rec.proposal;
  j["locked"] = rec.locked ? json(*rec.locked) : json(nullptr);
  j["lockround"] = rec.lock_round ? json(*rec.lock_round) : json(nullptr);
  j["queue"] = rec.queue;
  j["decided"] = rec.decided;
  j["decision"] = rec.decision ? json(*rec.decision) : json(nullptr);
  j["detected_root"] = to_json(rec.detected_root);
  if (rec.has_vote) j["m"] = rec.vote ? json(*rec.vote) : json(nullptr);
  return j;
}

}  // namespace dyncon
