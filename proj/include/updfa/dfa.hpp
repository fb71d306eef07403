#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace updfa {

using State = std::uint32_t;
using Digit = std::uint32_t;

/// A word is a digit sequence, least significant digit first. It may be
/// empty and may carry trailing zeros; both denote the same value.
using Word = std::vector<Digit>;

inline constexpr State kNoState = static_cast<State>(-1);

/// Numeric value of an LSDF word: sum of digit[i] * base^i.
/// Throws std::invalid_argument on a digit >= base and std::overflow_error
/// if the value does not fit in 64 bits.
std::uint64_t word_value(const Word& word, unsigned base);

/// Canonical LSDF representation: no trailing zero digit; rep(0) is the
/// empty word.
Word lsdf_rep(std::uint64_t n, unsigned base);

/// Complete deterministic automaton over the digit alphabet {0..base-1},
/// reading least significant digit first.
///
/// Invariants enforced at construction: the transition table is total,
/// every state is reachable from the initial state, and all ids are in
/// range. Instances are immutable and safe to share across threads.
class Dfa {
 public:
  Dfa(unsigned base, State initial, std::vector<State> delta,
      std::vector<char> finals);

  /// Builds the automaton from a possibly non-accessible transition table
  /// by dropping unreachable states (BFS renumbering from the initial
  /// state, digits in increasing order).
  static Dfa trimmed(unsigned base, State initial, std::vector<State> delta,
                     std::vector<char> finals);

  unsigned base() const { return base_; }
  std::size_t state_count() const { return finals_.size(); }
  State initial() const { return initial_; }
  bool is_final(State q) const { return finals_[q] != 0; }

  State next(State q, Digit a) const {
    return delta_[static_cast<std::size_t>(q) * base_ + a];
  }

  State run(State from, const Word& word) const;
  bool accepts_word(const Word& word) const;

  /// Whether some representation of n (canonical rep plus 0-padding) is
  /// accepted. Follows the 0-tail for at most state_count steps, which is
  /// enough for the tail to enter its cycle.
  bool accepts_number(std::uint64_t n) const;

  const std::vector<State>& delta() const { return delta_; }
  const std::vector<char>& finals() const { return finals_; }
  std::vector<State> final_states() const;

  bool operator==(const Dfa& other) const = default;

 private:
  unsigned base_;
  State initial_;
  std::vector<State> delta_;   // state * base + digit -> state
  std::vector<char> finals_;
};

/// Forward and inverse action of one letter on the state set.
struct StatePermutation {
  std::vector<State> forward;
  std::vector<State> inverse;
};

struct DigitPermutations {
  std::vector<StatePermutation> per_digit;
};

/// Per-digit permutations if every digit acts injectively on the states
/// (group automaton), nothing otherwise. Linear time.
std::optional<DigitPermutations> group_permutations(const Dfa& dfa);

/// Minimal complete DFA of the same language, via Hopcroft partition
/// refinement (O(n log n)), renumbered canonically by BFS from the initial
/// state with digits in increasing order. Two minimized automata are
/// isomorphic iff they compare equal.
Dfa minimize(const Dfa& dfa);

/// BFS renumbering from the initial state, digits in increasing order.
Dfa canonical_form(const Dfa& dfa);

/// Accessible product automaton; a pair is final according to combine().
/// Throws std::invalid_argument on base mismatch.
Dfa product(const Dfa& a, const Dfa& b,
            const std::function<bool(bool, bool)>& combine);

/// Language equality for same-base automata (union-find state merging).
bool equivalent(const Dfa& a, const Dfa& b);

/// For every state q: whether the 0-labelled path from q reaches a final
/// state. Precomputing this makes accepts_number a plain run of the
/// canonical representation.
std::vector<char> zero_tail_acceptance(const Dfa& dfa);

}  // namespace updfa
