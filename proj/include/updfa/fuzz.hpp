#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "updfa/builders.hpp"
#include "updfa/dfa.hpp"

namespace updfa {

/// Random UP-set with period <= max_period and threshold <= max_threshold;
/// every residue is included with probability 1/2.
UpSet random_up_set(std::mt19937_64& rng, std::uint64_t max_period,
                    std::uint64_t max_threshold);

/// Retargets one uniformly chosen transition to a different state and trims
/// any states that become unreachable. Completeness is preserved. Requires
/// at least two states.
Dfa mutate_single_edge(const Dfa& dfa, std::mt19937_64& rng);

/// Checks that is_up's verdict on the automaton agrees with the desk-scale
/// oracle: a confirmed UP verdict must match the acceptance bitmap, a
/// NOT_UP verdict must not be refutable by find_up_params (window [0,4096),
/// period <= 64, threshold <= 512; window fits are adjudicated by exact
/// automaton equivalence). Returns a description of the disagreement, or
/// nothing.
std::optional<std::string> check_verdict_agreement(const Dfa& dfa);

struct FuzzOptions {
  std::uint64_t seed = 0;
  int count = 100;
  unsigned base = 0;  // 0 = rotate through {2, 3, 10}
};

struct FuzzResult {
  int iterations_run = 0;
  std::optional<std::string> failure;
  std::optional<Dfa> counterexample;
};

/// Seeded property fuzzing: per iteration, build a random UP automaton,
/// require the criterion to accept it with oracle-exact parameters, then
/// mutate one edge and require verdict/oracle agreement on the mutant.
FuzzResult run_fuzz(const FuzzOptions& options);

}  // namespace updfa
