#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "updfa/builders.hpp"
#include "updfa/dfa.hpp"

namespace updfa {

/// Fixed-length boolean sequence over [0, N), packed into 64-bit words.
class Bitmap {
 public:
  explicit Bitmap(std::size_t size)
      : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }

  bool get(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  void set(std::size_t i, bool value) {
    std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  bool operator==(const Bitmap&) const = default;

 private:
  std::size_t size_;
  std::vector<std::uint64_t> words_;
};

/// Bit n set iff the automaton accepts the number n, for n in [0, size).
Bitmap accepted_bitmap(const Dfa& dfa, std::size_t size);

/// Bit n set iff n >= threshold and n mod period is a listed residue.
Bitmap periodic_bitmap(const UpSet& set, std::size_t size);

/// Smallest (threshold, then period) with threshold <= max_threshold and
/// period <= max_period such that the bits on [threshold, size) are
/// period-periodic; residues are read off [threshold, threshold+period).
/// Requires size >= max_threshold + 4*max_period.
std::optional<UpSet> find_up_params(const Bitmap& bits,
                                    std::uint64_t max_period,
                                    std::uint64_t max_threshold);

/// Run-length rendering, e.g. "0^3 1^2 0^5", for golden files.
std::string run_length_string(const Bitmap& bits);

}  // namespace updfa
