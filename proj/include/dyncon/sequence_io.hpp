#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "dyncon/graph.hpp"

namespace dyncon {

/// Malformed input; line() is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// JSON lines: {"n": n, "rounds": k} then one {"round": r, "edges": [[u,v],...]}
// per round, self-loops omitted.
void write_sequence(std::ostream& out, const GraphSequence& seq);
GraphSequence read_sequence(std::istream& in);

void save_sequence(const std::string& path, const GraphSequence& seq);
GraphSequence load_sequence(const std::string& path);

}  // namespace dyncon
