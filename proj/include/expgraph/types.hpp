#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace expgraph {

using node_t = std::uint32_t;
using offset_t = std::uint64_t;

struct Entry {
  node_t node;
  double value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

// Raised by readers on malformed input. line() is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Raised by the solvers when a run cannot produce a certified answer.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace expgraph
