#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "updfa/dfa.hpp"

namespace updfa {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses the v1 text format:
///
///   dfa v1
///   base <b>
///   states <n>
///   initial <q>
///   finals <q1> <q2> ...        (may be empty)
///   trans <q> <digit> <q'>      (exactly n*b lines)
///
/// '#' starts a comment; blank lines are ignored. Duplicate or missing
/// transitions, out-of-range ids and unreachable states are rejected.
Dfa parse_dfa(std::istream& in);
Dfa parse_dfa_string(const std::string& text);

/// Serializes in the v1 text format, transitions ordered by (state, digit).
/// parse(format(dfa)) reproduces the automaton exactly.
std::string format_dfa(const Dfa& dfa);

/// Graphviz export: the initial state gets an incoming arrow from a point
/// node, final states are double-circled, edges are labelled by digit.
std::string to_dot(const Dfa& dfa);

}  // namespace updfa
