#pragma once

// Small hand-built automata shared across test files.

#include "updfa/builders.hpp"
#include "updfa/dfa.hpp"
#include "updfa/pascal.hpp"

namespace updfa::testing {

/// Minimal DFA of the powers of two in base 2 (LSDF words 0^k 1 0^*):
/// state 0 = no 1 read, state 1 = exactly one 1 (final), state 2 = dead.
inline Dfa powers_of_two() {
  return Dfa(2, 0, {0, 1, 1, 2, 2, 2}, {0, 1, 0});
}

/// Minimal DFA of numbers with an even count of 1-digits in base 2.
inline Dfa even_one_count() {
  return Dfa(2, 0, {0, 1, 1, 0}, {1, 0});
}

/// One state, every digit looping.
inline Dfa one_state(unsigned base, bool accepting) {
  std::vector<State> delta(base, 0);
  return Dfa(base, 0, std::move(delta), {accepting ? char(1) : char(0)});
}

/// The automaton of integers congruent to 5 mod 12 in base 2: product of
/// the minimal mod-3 Pascal automaton and the mod-4 divisor tree.
inline Dfa five_mod_twelve() {
  Dfa min_mod3 = minimize(build_generalized_pascal({2}, 3, 2));
  Dfa tree_mod4 = divisor_tree(4, 2, {1});
  return product(min_mod3, tree_mod4, [](bool a, bool b) { return a && b; });
}

}  // namespace updfa::testing
