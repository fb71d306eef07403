#pragma once

#include <cstdint>
#include <vector>

#include "updfa/dfa.hpp"

namespace updfa {

/// An ultimately periodic set {n >= threshold : n mod period in residues}.
struct UpSet {
  std::uint64_t period = 1;
  std::vector<std::uint64_t> residues;
  std::uint64_t threshold = 0;

  bool contains(std::uint64_t n) const;
  bool operator==(const UpSet&) const = default;
};

/// Factorization p = k·d with gcd(k, base) = 1 and d dividing base^exponent
/// (exponent minimal, 0 when d = 1).
struct CrtSplit {
  std::uint64_t coprime_part = 1;   // k
  std::uint64_t divisor_part = 1;   // d
  unsigned exponent = 0;            // j
};

CrtSplit crt_split(std::uint64_t period, unsigned base);

/// Residue bookkeeping for the split: the pairs (r mod d, r mod k) for
/// r in R, and for every x < d the set T_x of residues mod k that decide
/// membership once n = x (mod d).
struct ResidueTables {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;  // (r_d, r_k)
  std::vector<std::vector<std::uint64_t>> by_divisor_residue;  // T_x, x < d
};

ResidueTables residue_tables(const std::vector<std::uint64_t>& residues,
                             std::uint64_t period, unsigned base);

/// Complete b-tree of depth j (minimal with d | base^j). After j digits the
/// residue mod d is fixed, so depth-j nodes are all-digit sinks. The node
/// reached by word u is final iff value(u) mod d is accepted, internal
/// nodes included.
Dfa divisor_tree(std::uint64_t d, unsigned base,
                 const std::vector<std::uint64_t>& accepted);

/// Automaton for the purely periodic set {n : n mod p in R}, arbitrary p:
/// a complete b-tree of depth j whose leaves enter shared generalized
/// Pascal automata A_{T_x,k}; a tree node for word u is final iff value(u)
/// itself belongs to the set.
Dfa build_psa(const std::vector<std::uint64_t>& residues, std::uint64_t period,
              unsigned base);

/// Threshold automaton for {n : n >= m}: a complete b-tree of depth
/// ceil(log_base(max(m,1))) labelled by word values, each depth-j node
/// looping on 0 and exiting to a final sink on any nonzero digit.
Dfa build_threshold(std::uint64_t m, unsigned base);

/// Product of build_psa and build_threshold: accepts exactly
/// {n >= m : n mod p in R}. The output satisfies the UP-criterion.
Dfa build_up_automaton(const UpSet& set, unsigned base);

}  // namespace updfa
