#include "updfa/oracle.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace updfa {

Bitmap accepted_bitmap(const Dfa& dfa, std::size_t size) {
  Bitmap bits(size);
  std::vector<char> tail = zero_tail_acceptance(dfa);
  const unsigned base = dfa.base();
  Word rep;
  for (std::size_t n = 0; n < size; ++n) {
    rep.clear();
    std::size_t v = n;
    while (v != 0) {
      rep.push_back(static_cast<Digit>(v % base));
      v /= base;
    }
    State q = dfa.initial();
    for (Digit a : rep) q = dfa.next(q, a);
    if (tail[q]) bits.set(n, true);
  }
  return bits;
}

Bitmap periodic_bitmap(const UpSet& set, std::size_t size) {
  if (set.period == 0) throw std::invalid_argument("period must be positive");
  Bitmap bits(size);
  std::vector<char> in_r(set.period, 0);
  for (std::uint64_t r : set.residues) {
    if (r >= set.period) throw std::invalid_argument("residue out of range");
    in_r[r] = 1;
  }
  for (std::size_t n = set.threshold; n < size; ++n) {
    if (in_r[n % set.period]) bits.set(n, true);
  }
  return bits;
}

std::optional<UpSet> find_up_params(const Bitmap& bits,
                                    std::uint64_t max_period,
                                    std::uint64_t max_threshold) {
  if (max_period == 0) throw std::invalid_argument("max period must be positive");
  const std::size_t size = bits.size();
  if (size < max_threshold + 4 * max_period) {
    throw std::invalid_argument("bitmap window too small for the search bounds");
  }

  // For a fixed period p, the valid thresholds are exactly those above the
  // last mismatch between the bitmap and its p-shift. Word-wise scan from
  // the high end.
  const auto& words = bits.words();
  auto min_threshold_for = [&](std::uint64_t p) -> std::uint64_t {
    std::size_t limit = size - p;  // compare positions [0, limit)
    std::size_t word_count = (limit + 63) / 64;
    for (std::size_t w = word_count; w-- > 0;) {
      std::uint64_t lhs = words[w];
      // Bits of the p-shifted bitmap within word w.
      std::size_t src = w * 64 + p;
      std::uint64_t rhs = words[src >> 6] >> (src & 63);
      if (src & 63) {
        std::size_t hi = (src >> 6) + 1;
        if (hi < words.size()) rhs |= words[hi] << (64 - (src & 63));
      }
      std::uint64_t diff = lhs ^ rhs;
      if (w == word_count - 1 && (limit & 63)) {
        diff &= (std::uint64_t{1} << (limit & 63)) - 1;
      }
      if (diff) {
        std::size_t bit = 63 - static_cast<std::size_t>(__builtin_clzll(diff));
        return w * 64 + bit + 1;
      }
    }
    return 0;
  };

  std::uint64_t best_m = static_cast<std::uint64_t>(-1);
  std::uint64_t best_p = 0;
  for (std::uint64_t p = 1; p <= max_period; ++p) {
    std::uint64_t m = min_threshold_for(p);
    if (m <= max_threshold && m < best_m) {
      best_m = m;
      best_p = p;
    }
  }
  if (best_p == 0) return std::nullopt;

  UpSet found;
  found.period = best_p;
  found.threshold = best_m;
  for (std::uint64_t x = 0; x < best_p; ++x) {
    if (bits.get(best_m + x)) {
      found.residues.push_back((best_m + x) % best_p);
    }
  }
  std::sort(found.residues.begin(), found.residues.end());
  return found;
}

std::string run_length_string(const Bitmap& bits) {
  std::ostringstream out;
  std::size_t i = 0;
  bool first = true;
  while (i < bits.size()) {
    bool v = bits.get(i);
    std::size_t j = i;
    while (j < bits.size() && bits.get(j) == v) ++j;
    if (!first) out << ' ';
    out << (v ? '1' : '0') << '^' << (j - i);
    first = false;
    i = j;
  }
  return out.str();
}

}  // namespace updfa
