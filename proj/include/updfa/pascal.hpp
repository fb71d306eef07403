#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "updfa/dfa.hpp"

namespace updfa {

/// Parameters of a Pascal automaton: a period coprime with the base, the
/// multiplicative order psi of the base modulo the period, and the accepted
/// residues.
struct PascalParams {
  std::uint64_t period = 1;
  std::uint64_t psi = 1;
  std::vector<std::uint64_t> residues;
};

/// Smallest positive psi with base^psi = 1 (mod modulus); psi = 1 when the
/// modulus is 1. Throws std::invalid_argument unless gcd(base, modulus) = 1.
std::uint64_t mult_order(std::uint64_t base, std::uint64_t modulus);

/// State id of (value_residue, length_residue) in a Pascal automaton built
/// by build_pascal / build_generalized_pascal.
inline State pascal_state(std::uint64_t period, std::uint64_t psi,
                          std::uint64_t s, std::uint64_t t) {
  (void)period;
  return static_cast<State>(s * psi + t);
}

/// Automaton on Z/pZ x Z/psiZ tracking (value mod p, length mod psi):
/// initial (0,0), transition (s,t)·a = (s + a·base^t mod p, t+1 mod psi),
/// final states R x Z/psiZ. Accepts exactly the numbers whose residue mod p
/// lies in R. Requires gcd(p, base) = 1; R need not be canonical.
Dfa build_pascal(const PascalParams& params, unsigned base);

/// Same construction with psi computed from (base, period).
Dfa build_generalized_pascal(const std::vector<std::uint64_t>& residues,
                             std::uint64_t period, unsigned base);

/// Actions of the letter 0 and of the derived letter g = 1·0^{-1} on a
/// group automaton's states.
struct ModifiedTransitions {
  StatePermutation zero;
  StatePermutation g;
};

ModifiedTransitions to_modified(const Dfa& dfa, const DigitPermutations& perms);

/// Whether every digit a acts as g^a followed by 0. Holds in every quotient
/// of a Pascal automaton. For base 2 this is vacuous: the actions of digits
/// 0 and 1 define g, so the law is an identity.
bool check_digit_law(const Dfa& dfa, const ModifiedTransitions& mod);

enum class PascalReject {
  None,
  NotGroup,
  DigitLaw,
  NonCoprimePeriod,
  SizeMismatch,
  ResidueOrbits,
  MarkingConflict,
};

std::string to_string(PascalReject reject);

/// Witness that a DFA is (isomorphic to) the quotient of a Pascal automaton:
/// the period p read off the g-circuit through the initial state, the
/// residues R read on that circuit, the class parameters (s, t) of the
/// initial state, and the bijective marking state <-> (x, z) with
/// x in [0,p), z in [0,t). state_count = p·t.
struct QuotientWitness {
  std::uint64_t period = 1;
  std::vector<std::uint64_t> residues;
  std::uint64_t s = 0;
  std::uint64_t t = 1;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> marks;
};

struct PascalRecognition {
  std::optional<QuotientWitness> witness;
  PascalReject reject = PascalReject::None;

  explicit operator bool() const { return witness.has_value(); }
};

/// Linear-time test whether a complete accessible DFA (minimal within its
/// own state set) is a quotient of a Pascal automaton. All failures are
/// reported through the reject code; nothing throws.
PascalRecognition recognize_pascal_quotient(const Dfa& dfa);

/// Residues accepted when the initial state moves to the state marked
/// (s2, t2): { (r - s2)·(base^t2)^{-1} mod p : r in R }.
std::vector<std::uint64_t> shift_initial_residues(const QuotientWitness& w,
                                                  std::uint64_t s2,
                                                  std::uint64_t t2,
                                                  unsigned base);

/// Rebuilds the automaton a witness describes, on the witness's own state
/// numbering. Recognition followed by this reconstruction reproduces the
/// input transition table exactly.
Dfa quotient_from_witness(const QuotientWitness& w, unsigned base);

}  // namespace updfa
