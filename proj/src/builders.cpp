#include "updfa/builders.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "updfa/pascal.hpp"

namespace updfa {

namespace {

constexpr std::uint64_t kMaxStates = std::uint64_t{1} << 27;

// Number of tree nodes with depth < j: 1 + b + ... + b^(j-1).
std::uint64_t tree_size(unsigned base, unsigned j) {
  std::uint64_t total = 0, layer = 1;
  for (unsigned l = 0; l < j; ++l) {
    total += layer;
    layer *= base;
    if (total > kMaxStates || layer > kMaxStates) {
      throw std::invalid_argument("divisor tree too large");
    }
  }
  return total;
}

}  // namespace

bool UpSet::contains(std::uint64_t n) const {
  if (n < threshold) return false;
  std::uint64_t r = n % period;
  return std::find(residues.begin(), residues.end(), r) != residues.end();
}

CrtSplit crt_split(std::uint64_t period, unsigned base) {
  if (period == 0) throw std::invalid_argument("period must be positive");
  CrtSplit split;
  std::uint64_t k = period;
  std::uint64_t g = std::gcd<std::uint64_t>(k, base);
  while (g != 1) {
    while (k % g == 0) k /= g;
    g = std::gcd<std::uint64_t>(k, base);
  }
  split.coprime_part = k;
  split.divisor_part = period / k;
  std::uint64_t pw = 1;
  while (pw % split.divisor_part != 0) {
    pw *= base;
    ++split.exponent;
    if (split.exponent > 63) {
      throw std::invalid_argument("divisor part exceeds representable power");
    }
  }
  return split;
}

ResidueTables residue_tables(const std::vector<std::uint64_t>& residues,
                             std::uint64_t period, unsigned base) {
  CrtSplit split = crt_split(period, base);
  ResidueTables tables;
  tables.by_divisor_residue.resize(split.divisor_part);
  for (std::uint64_t r : residues) {
    if (r >= period) {
      throw std::invalid_argument("residue not below period");
    }
    std::uint64_t rd = r % split.divisor_part;
    std::uint64_t rk = r % split.coprime_part;
    tables.pairs.emplace_back(rd, rk);
    auto& tx = tables.by_divisor_residue[rd];
    if (std::find(tx.begin(), tx.end(), rk) == tx.end()) tx.push_back(rk);
  }
  for (auto& tx : tables.by_divisor_residue) std::sort(tx.begin(), tx.end());
  return tables;
}

Dfa divisor_tree(std::uint64_t d, unsigned base,
                 const std::vector<std::uint64_t>& accepted) {
  if (d == 0) throw std::invalid_argument("divisor must be positive");
  CrtSplit split = crt_split(d, base);
  if (split.coprime_part != 1) {
    throw std::invalid_argument("divisor must divide a power of the base");
  }
  const unsigned j = split.exponent;
  std::vector<char> in_acc(d, 0);
  for (std::uint64_t r : accepted) {
    if (r >= d) throw std::invalid_argument("accepted residue not below divisor");
    in_acc[r] = 1;
  }

  // Nodes with |u| < j in level order, then the b^j sinks. A node at level
  // l is indexed by value(u), a bijection for fixed-length LSDF words.
  const std::uint64_t internal = tree_size(base, j);
  std::uint64_t leaves = 1;
  for (unsigned l = 0; l < j; ++l) leaves *= base;
  if (internal + leaves > kMaxStates) {
    throw std::invalid_argument("divisor tree too large");
  }
  const std::size_t n = static_cast<std::size_t>(internal + leaves);

  std::vector<std::uint64_t> level_offset(j + 1);
  {
    std::uint64_t off = 0, layer = 1;
    for (unsigned l = 0; l <= j; ++l) {
      level_offset[l] = off;
      off += layer;
      layer *= base;
    }
  }

  std::vector<State> delta(n * base);
  std::vector<char> finals(n, 0);
  std::uint64_t layer = 1;
  for (unsigned l = 0; l <= j; ++l) {
    std::uint64_t place = 1;
    for (unsigned i = 0; i < l; ++i) place *= base;
    for (std::uint64_t v = 0; v < layer; ++v) {
      State q = static_cast<State>(level_offset[l] + v);
      finals[q] = in_acc[v % d];
      for (unsigned a = 0; a < base; ++a) {
        State target;
        if (l < j) {
          target = static_cast<State>(level_offset[l + 1] + v + a * place);
        } else {
          target = q;  // depth-j sink
        }
        delta[static_cast<std::size_t>(q) * base + a] = target;
      }
    }
    layer *= base;
  }
  return Dfa(base, 0, std::move(delta), std::move(finals));
}

Dfa build_psa(const std::vector<std::uint64_t>& residues, std::uint64_t period,
              unsigned base) {
  const CrtSplit split = crt_split(period, base);
  const std::uint64_t k = split.coprime_part;
  const std::uint64_t d = split.divisor_part;
  const unsigned j = split.exponent;
  const ResidueTables tables = residue_tables(residues, period, base);

  if (j == 0) {
    return build_generalized_pascal(tables.by_divisor_residue[0], k, base);
  }

  const std::uint64_t psi = mult_order(base, k);
  if (k * psi > kMaxStates) {
    throw std::invalid_argument("Pascal component too large");
  }

  // One shared generalized Pascal automaton per distinct residue table.
  std::map<std::vector<std::uint64_t>, std::size_t> copy_of;
  std::vector<const std::vector<std::uint64_t>*> copy_sets;
  std::vector<std::size_t> copy_for_x(d);
  for (std::uint64_t x = 0; x < d; ++x) {
    const auto& tx = tables.by_divisor_residue[x];
    auto [it, inserted] = copy_of.emplace(tx, copy_sets.size());
    if (inserted) copy_sets.push_back(&it->first);
    copy_for_x[x] = it->second;
  }

  const std::uint64_t internal = tree_size(base, j);
  const std::uint64_t copy_states = k * psi;
  const std::uint64_t total = internal + copy_states * copy_sets.size();
  if (total > kMaxStates) throw std::invalid_argument("automaton too large");
  const std::size_t n = static_cast<std::size_t>(total);

  std::vector<char> in_r(period, 0);
  for (std::uint64_t r : residues) in_r[r] = 1;

  auto copy_offset = [&](std::size_t c) {
    return internal + copy_states * c;
  };
  const std::uint64_t tj = j % psi;

  std::vector<State> delta(n * base);
  std::vector<char> finals(n, 0);

  // Tree part: node (level l, value v), id = level_offset[l] + v.
  std::vector<std::uint64_t> level_offset(j);
  {
    std::uint64_t off = 0, layer = 1;
    for (unsigned l = 0; l < j; ++l) {
      level_offset[l] = off;
      off += layer;
      layer *= base;
    }
  }
  std::uint64_t layer = 1;
  for (unsigned l = 0; l < j; ++l) {
    std::uint64_t place = 1;
    for (unsigned i = 0; i < l; ++i) place *= base;
    for (std::uint64_t v = 0; v < layer; ++v) {
      State q = static_cast<State>(level_offset[l] + v);
      finals[q] = in_r[v % period];
      for (unsigned a = 0; a < base; ++a) {
        std::uint64_t v2 = v + a * place;
        State target;
        if (l + 1 < j) {
          target = static_cast<State>(level_offset[l + 1] + v2);
        } else {
          // Word of length j: enter the Pascal automaton for T_x at the
          // state it would itself reach on that word.
          std::uint64_t x = v2 % d;
          State entry = pascal_state(k, psi, v2 % k, tj);
          target = static_cast<State>(copy_offset(copy_for_x[x]) + entry);
        }
        delta[static_cast<std::size_t>(q) * base + a] = target;
      }
    }
    layer *= base;
  }

  // Pascal copies.
  std::vector<std::uint64_t> bpow(psi);
  bpow[0] = 1 % k;
  for (std::uint64_t t = 1; t < psi; ++t) {
    bpow[t] = bpow[t - 1] * base % k;
  }
  for (std::size_t c = 0; c < copy_sets.size(); ++c) {
    std::vector<char> in_t(k, 0);
    for (std::uint64_t r : *copy_sets[c]) in_t[r] = 1;
    std::uint64_t off = copy_offset(c);
    for (std::uint64_t s = 0; s < k; ++s) {
      for (std::uint64_t t = 0; t < psi; ++t) {
        State q = static_cast<State>(off + pascal_state(k, psi, s, t));
        finals[q] = in_t[s];
        std::uint64_t t2 = (t + 1) % psi;
        for (unsigned a = 0; a < base; ++a) {
          std::uint64_t s2 = (s + a * bpow[t]) % k;
          delta[static_cast<std::size_t>(q) * base + a] =
              static_cast<State>(off + pascal_state(k, psi, s2, t2));
        }
      }
    }
  }
  return Dfa(base, 0, std::move(delta), std::move(finals));
}

Dfa build_threshold(std::uint64_t m, unsigned base) {
  unsigned depth = 0;
  std::uint64_t pw = 1;
  while (pw < m) {
    pw *= base;
    ++depth;
    if (pw > kMaxStates) {
      throw std::invalid_argument("threshold automaton too large");
    }
  }
  const std::uint64_t tree = tree_size(base, depth + 1);
  const std::size_t n = static_cast<std::size_t>(tree + 1);
  const State sink = static_cast<State>(tree);

  std::vector<std::uint64_t> level_offset(depth + 1);
  {
    std::uint64_t off = 0, layer = 1;
    for (unsigned l = 0; l <= depth; ++l) {
      level_offset[l] = off;
      off += layer;
      layer *= base;
    }
  }

  std::vector<State> delta(n * base);
  std::vector<char> finals(n, 0);
  std::uint64_t layer = 1;
  for (unsigned l = 0; l <= depth; ++l) {
    std::uint64_t place = 1;
    for (unsigned i = 0; i < l; ++i) place *= base;
    for (std::uint64_t v = 0; v < layer; ++v) {
      State q = static_cast<State>(level_offset[l] + v);
      finals[q] = v >= m ? 1 : 0;
      for (unsigned a = 0; a < base; ++a) {
        State target;
        if (l < depth) {
          target = static_cast<State>(level_offset[l + 1] + v + a * place);
        } else {
          target = a == 0 ? q : sink;
        }
        delta[static_cast<std::size_t>(q) * base + a] = target;
      }
    }
    layer *= base;
  }
  finals[sink] = 1;
  for (unsigned a = 0; a < base; ++a) {
    delta[static_cast<std::size_t>(sink) * base + a] = sink;
  }
  return Dfa(base, 0, std::move(delta), std::move(finals));
}

Dfa build_up_automaton(const UpSet& set, unsigned base) {
  if (set.period == 0) throw std::invalid_argument("period must be positive");
  Dfa periodic = build_psa(set.residues, set.period, base);
  Dfa threshold = build_threshold(set.threshold, base);
  return product(periodic, threshold,
                 [](bool a, bool b) { return a && b; });
}

}  // namespace updfa
