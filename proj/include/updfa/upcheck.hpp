#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "updfa/builders.hpp"
#include "updfa/dfa.hpp"
#include "updfa/pascal.hpp"

namespace updfa {

/// Tarjan condensation: the map state -> SCC id, the members of each SCC,
/// the DAG edges between distinct SCCs, and whether an SCC has an internal
/// transition. SCC ids are in reverse topological order (successors first).
struct Condensation {
  std::vector<std::uint32_t> scc_of;
  std::vector<std::vector<State>> members;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> dag_edges;
  std::vector<char> has_internal_edge;

  std::size_t scc_count() const { return members.size(); }
};

Condensation condense(const Dfa& dfa);

/// Trivial: a single state with no internal transition. Type1: non-trivial
/// with an internal transition labelled by a nonzero digit. Type2:
/// non-trivial with all internal transitions labelled 0.
enum class SccClass { Trivial, Type1, Type2 };

std::vector<SccClass> classify(const Dfa& dfa, const Condensation& cond);

enum class UpCondition { Up0, Up1, Up2, Up3, Up4, NotMinimalInput };

std::string to_string(UpCondition c);

struct UpFailure {
  UpCondition condition;
  std::uint32_t scc = static_cast<std::uint32_t>(-1);
  State state = kNoState;
  Digit digit = 0;
  PascalReject reject = PascalReject::None;  // detail for Up3
};

/// States whose finality differs from their 0-successor's.
std::vector<State> check_up0(const Dfa& dfa);

/// UP-1: every Type 1 SCC is a condensation leaf. UP-2: every Type 2 SCC is
/// a simple 0-circuit whose DAG successor set is exactly one Type 1 leaf.
std::vector<UpFailure> check_up1_up2(const Dfa& dfa, const Condensation& cond,
                                     const std::vector<SccClass>& classes);

struct Up3Result {
  std::map<std::uint32_t, QuotientWitness> witnesses;
  std::vector<UpFailure> failures;
};

/// Runs Pascal-quotient recognition on each Type 1 SCC as a standalone
/// automaton (smallest member as initial state, finals inherited).
/// Requires UP-1 to have passed, so the SCCs are digit-closed.
Up3Result check_up3(const Dfa& dfa, const Condensation& cond,
                    const std::vector<SccClass>& classes);

/// Injective map from a 0-circuit into its Type 1 successor commuting with
/// internal 0-steps and agreeing on every exit.
struct Embedding {
  std::vector<std::pair<State, State>> map;
};

struct Up4Result {
  std::map<std::uint32_t, Embedding> embeddings;
  std::vector<UpFailure> failures;
};

Up4Result check_up4(const Dfa& dfa, const Condensation& cond,
                    const std::vector<SccClass>& classes,
                    const std::map<std::uint32_t, QuotientWitness>& witnesses);

struct UpTimings {
  double up0_s = 0;
  double condense_s = 0;
  double classify_s = 0;
  double up12_s = 0;
  double up3_s = 0;
  double up4_s = 0;
  double extract_s = 0;
  double minimize_s = 0;  // only when is_up minimized first

  double total() const {
    return up0_s + condense_s + classify_s + up12_s + up3_s + up4_s +
           extract_s + minimize_s;
  }
};

struct UpReport {
  bool verdict = false;
  std::vector<UpFailure> failures;
  std::optional<UpSet> parameters;
  std::map<std::uint32_t, QuotientWitness> witnesses;
  UpTimings timings;
  /// Verdict is UP but the canonical parameters exceed the desk-scale
  /// extraction cap, so `parameters` is empty.
  bool parameters_out_of_range = false;
};

/// Canonical parameters of the language of an automaton that passed the
/// criterion: overapproximate the period as lcm over Type 1 SCCs of
/// p_SCC * base^depth and the threshold as base^(DAG depth + 1), read the
/// residues, then shrink both against the acceptance bitmap.
UpSet extract_parameters(const Dfa& dfa, const Condensation& cond,
                         const std::map<std::uint32_t, QuotientWitness>& witnesses);

/// UP-0 through UP-4 in order, stopping after the first failing phase but
/// collecting every failure of the phases that run. Minimality of the input
/// is the caller's responsibility and is not verified. Linear time.
UpReport is_up_minimal(const Dfa& dfa);

/// Minimize (Hopcroft, O(n log n)) and run is_up_minimal.
UpReport is_up(const Dfa& dfa);

/// Machine-readable report: verdict=..., period/residues/threshold lines on
/// success, pascal-quotient witness lines, fail=... lines on failure.
std::string render_machine(const UpReport& report);

}  // namespace updfa
