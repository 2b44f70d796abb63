#include "dyncon/sequence_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"

#include "dyncon/atomic_file.hpp"

namespace dyncon {

using nlohmann::json;

void write_sequence(std::ostream& out, const GraphSequence& seq) {
  out << json{{"n", seq.process_count()}, {"rounds", seq.rounds()}}.dump() << '\n';
  for (Round r = 1; r <= seq.rounds(); ++r) {
    json edges = json::array();
    for (auto [u, v] : seq.at(r).edges()) edges.push_back({u, v});
    out << json{{"round", r}, {"edges", std::move(edges)}}.dump() << '\n';
  }
}

GraphSequence read_sequence(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto parse = [&](const std::string& text) {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, e.what());
    }
  };

  int n = 0;
  int rounds = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json header = parse(line);
    if (!header.is_object() || !header.contains("n") || !header["n"].is_number_integer()) {
      throw ParseError(line_no, "expected header {\"n\": n, \"rounds\": k}");
    }
    n = header["n"].get<int>();
    if (n < 1 || n > kMaxProcesses) throw ParseError(line_no, "n must be in [1, 64]");
    if (header.contains("rounds")) {
      if (!header["rounds"].is_number_integer()) throw ParseError(line_no, "rounds must be an integer");
      rounds = header["rounds"].get<int>();
    }
    break;
  }
  if (n == 0) throw ParseError(line_no, "missing header");

  GraphSequence seq(n);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj = parse(line);
    if (!obj.is_object() || !obj.contains("round") || !obj.contains("edges") || !obj["edges"].is_array()) {
      throw ParseError(line_no, "expected {\"round\": r, \"edges\": [...]}");
    }
    const int r = obj["round"].is_number_integer() ? obj["round"].get<int>() : -1;
    if (r != seq.rounds() + 1) {
      throw ParseError(line_no, "expected round " + std::to_string(seq.rounds() + 1));
    }
    CommGraph g(n);
    for (const auto& e : obj["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
        throw ParseError(line_no, "edge must be [u, v]");
      }
      const int u = e[0].get<int>();
      const int v = e[1].get<int>();
      if (u < 0 || u >= n || v < 0 || v >= n) throw ParseError(line_no, "edge endpoint out of range");
      g.add_edge(u, v);
    }
    seq.push_back(std::move(g));
  }
  if (rounds >= 0 && rounds != seq.rounds()) {
    throw ParseError(line_no, "header announces " + std::to_string(rounds) + " rounds, found " +
                                  std::to_string(seq.rounds()));
  }
  return seq;
}

void save_sequence(const std::string& path, const GraphSequence& seq) {
  write_atomically(path, [&](std::ostream& out) { write_sequence(out, seq); });
}

GraphSequence load_sequence(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  return read_sequence(in);
}

}  // namespace dyncon
