#include "updfa/dfa.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

namespace updfa {

namespace {

void check_digit(Digit a, unsigned base) {
  if (a >= base) {
    throw std::invalid_argument("digit " + std::to_string(a) +
                                " out of range for base " +
                                std::to_string(base));
  }
}

// BFS discovery order from `initial`, digits ascending. Returns old->new
// ids, kNoState for unreachable states, and the number of reachable states.
std::pair<std::vector<State>, std::size_t> bfs_numbering(
    unsigned base, State initial, const std::vector<State>& delta,
    std::size_t n) {
  std::vector<State> renum(n, kNoState);
  std::vector<State> order;
  order.reserve(n);
  renum[initial] = 0;
  order.push_back(initial);
  for (std::size_t head = 0; head < order.size(); ++head) {
    State q = order[head];
    for (unsigned a = 0; a < base; ++a) {
      State r = delta[static_cast<std::size_t>(q) * base + a];
      if (renum[r] == kNoState) {
        renum[r] = static_cast<State>(order.size());
        order.push_back(r);
      }
    }
  }
  return {std::move(renum), order.size()};
}

Dfa renumbered(unsigned base, State initial, const std::vector<State>& delta,
               const std::vector<char>& finals,
               const std::vector<State>& renum, std::size_t reachable) {
  std::size_t n = finals.size();
  std::vector<State> new_delta(reachable * base);
  std::vector<char> new_finals(reachable, 0);
  for (std::size_t q = 0; q < n; ++q) {
    if (renum[q] == kNoState) continue;
    State nq = renum[q];
    new_finals[nq] = finals[q];
    for (unsigned a = 0; a < base; ++a) {
      new_delta[static_cast<std::size_t>(nq) * base + a] =
          renum[delta[q * base + a]];
    }
  }
  return Dfa(base, renum[initial], std::move(new_delta),
             std::move(new_finals));
}

}  // namespace

std::uint64_t word_value(const Word& word, unsigned base) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  std::uint64_t value = 0;
  std::uint64_t place = 1;
  bool place_overflow = false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    check_digit(word[i], base);
    if (word[i] != 0) {
      if (place_overflow) throw std::overflow_error("word value overflow");
      std::uint64_t term;
      if (__builtin_mul_overflow(place, static_cast<std::uint64_t>(word[i]),
                                 &term) ||
          __builtin_add_overflow(value, term, &value)) {
        throw std::overflow_error("word value overflow");
      }
    }
    if (i + 1 < word.size() &&
        __builtin_mul_overflow(place, static_cast<std::uint64_t>(base),
                               &place)) {
      place_overflow = true;
      place = 0;
    }
  }
  return value;
}

Word lsdf_rep(std::uint64_t n, unsigned base) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  Word digits;
  while (n != 0) {
    digits.push_back(static_cast<Digit>(n % base));
    n /= base;
  }
  return digits;
}

Dfa::Dfa(unsigned base, State initial, std::vector<State> delta,
         std::vector<char> finals)
    : base_(base), initial_(initial), delta_(std::move(delta)),
      finals_(std::move(finals)) {
  if (base_ < 2) throw std::invalid_argument("base must be at least 2");
  std::size_t n = finals_.size();
  if (n == 0) throw std::invalid_argument("automaton needs at least one state");
  if (delta_.size() != n * base_) {
    throw std::invalid_argument("transition table is not total");
  }
  if (initial_ >= n) throw std::invalid_argument("initial state out of range");
  for (State t : delta_) {
    if (t >= n) throw std::invalid_argument("transition target out of range");
  }
  auto [renum, reachable] = bfs_numbering(base_, initial_, delta_, n);
  if (reachable != n) {
    for (std::size_t q = 0; q < n; ++q) {
      if (renum[q] == kNoState) {
        throw std::invalid_argument("state " + std::to_string(q) +
                                    " unreachable from the initial state");
      }
    }
  }
}

Dfa Dfa::trimmed(unsigned base, State initial, std::vector<State> delta,
                 std::vector<char> finals) {
  std::size_t n = finals.size();
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  if (n == 0 || delta.size() != n * base || initial >= n) {
    throw std::invalid_argument("malformed transition table");
  }
  auto [renum, reachable] = bfs_numbering(base, initial, delta, n);
  if (reachable == n) {
    return Dfa(base, initial, std::move(delta), std::move(finals));
  }
  return renumbered(base, initial, delta, finals, renum, reachable);
}

State Dfa::run(State from, const Word& word) const {
  State q = from;
  for (Digit a : word) {
    check_digit(a, base_);
    q = next(q, a);
  }
  return q;
}

bool Dfa::accepts_word(const Word& word) const {
  return is_final(run(initial_, word));
}

bool Dfa::accepts_number(std::uint64_t n) const {
  State q = run(initial_, lsdf_rep(n, base_));
  for (std::size_t step = 0; step <= state_count(); ++step) {
    if (is_final(q)) return true;
    q = next(q, 0);
  }
  return false;
}

std::vector<State> Dfa::final_states() const {
  std::vector<State> out;
  for (std::size_t q = 0; q < finals_.size(); ++q) {
    if (finals_[q]) out.push_back(static_cast<State>(q));
  }
  return out;
}

std::optional<DigitPermutations> group_permutations(const Dfa& dfa) {
  std::size_t n = dfa.state_count();
  DigitPermutations perms;
  perms.per_digit.resize(dfa.base());
  for (unsigned a = 0; a < dfa.base(); ++a) {
    auto& perm = perms.per_digit[a];
    perm.forward.resize(n);
    perm.inverse.assign(n, kNoState);
    for (std::size_t q = 0; q < n; ++q) {
      State t = dfa.next(static_cast<State>(q), a);
      perm.forward[q] = t;
      if (perm.inverse[t] != kNoState) return std::nullopt;
      perm.inverse[t] = static_cast<State>(q);
    }
  }
  return perms;
}

Dfa canonical_form(const Dfa& dfa) {
  auto [renum, reachable] =
      bfs_numbering(dfa.base(), dfa.initial(), dfa.delta(), dfa.state_count());
  return renumbered(dfa.base(), dfa.initial(), dfa.delta(), dfa.finals(),
                    renum, reachable);
}

// ---------------------------------------------------------------------------
// Hopcroft partition refinement.

namespace {

class Partition {
 public:
  explicit Partition(std::size_t n)
      : elems_(n), pos_(n), block_of_(n, 0), marked_(n, 0) {
    for (std::size_t i = 0; i < n; ++i) elems_[i] = static_cast<State>(i);
    for (std::size_t i = 0; i < n; ++i) pos_[i] = static_cast<State>(i);
    begin_.push_back(0);
    end_.push_back(static_cast<State>(n));
    marked_count_.push_back(0);
  }

  std::size_t block_count() const { return begin_.size(); }
  std::uint32_t block_of(State q) const { return block_of_[q]; }
  std::size_t size(std::uint32_t b) const { return end_[b] - begin_[b]; }

  State element(std::uint32_t b, std::size_t i) const {
    return elems_[begin_[b] + i];
  }

  // Moves q into the marked front region of its block.
  void mark(State q) {
    std::uint32_t b = block_of_[q];
    State dest = begin_[b] + marked_count_[b];
    State old = pos_[q];
    std::swap(elems_[old], elems_[dest]);
    pos_[elems_[old]] = old;
    pos_[elems_[dest]] = dest;
    ++marked_count_[b];
  }

  bool marked(State q) const {
    std::uint32_t b = block_of_[q];
    return pos_[q] < begin_[b] + marked_count_[b];
  }

  std::size_t marked_count(std::uint32_t b) const { return marked_count_[b]; }

  // Splits off the marked part of block b as a new block; returns its id.
  // Resets the mark counter either way.
  std::uint32_t split(std::uint32_t b) {
    State mid = begin_[b] + marked_count_[b];
    marked_count_[b] = 0;
    if (mid == begin_[b] || mid == end_[b]) return kNoBlock;
    std::uint32_t nb = static_cast<std::uint32_t>(begin_.size());
    begin_.push_back(begin_[b]);
    end_.push_back(mid);
    marked_count_.push_back(0);
    begin_[b] = mid;
    for (State i = begin_[nb]; i < end_[nb]; ++i) block_of_[elems_[i]] = nb;
    return nb;
  }

  // Initial split by finality (no marks involved).
  std::uint32_t split_initial(const std::vector<char>& finals) {
    for (std::size_t q = 0; q < finals.size(); ++q) {
      if (finals[q]) mark(static_cast<State>(q));
    }
    return split(0);
  }

  static constexpr std::uint32_t kNoBlock = static_cast<std::uint32_t>(-1);

 private:
  std::vector<State> elems_, pos_;
  std::vector<std::uint32_t> block_of_;
  std::vector<char> marked_;
  std::vector<State> begin_, end_;
  std::vector<State> marked_count_;
};

}  // namespace

Dfa minimize(const Dfa& dfa) {
  const std::size_t n = dfa.state_count();
  const unsigned b = dfa.base();
  if (n == 1) return canonical_form(dfa);

  // Inverse transitions, CSR per digit.
  std::vector<std::uint32_t> inv_off((n + 1) * b, 0);
  std::vector<State> inv_src(n * b);
  for (std::size_t q = 0; q < n; ++q) {
    for (unsigned a = 0; a < b; ++a) {
      ++inv_off[static_cast<std::size_t>(a) * (n + 1) + dfa.next(q, a) + 1];
    }
  }
  for (unsigned a = 0; a < b; ++a) {
    std::size_t base_ix = static_cast<std::size_t>(a) * (n + 1);
    for (std::size_t t = 0; t < n; ++t) {
      inv_off[base_ix + t + 1] += inv_off[base_ix + t];
    }
  }
  {
    std::vector<std::uint32_t> fill(inv_off.begin(), inv_off.end());
    for (std::size_t q = 0; q < n; ++q) {
      for (unsigned a = 0; a < b; ++a) {
        State t = dfa.next(static_cast<State>(q), a);
        std::size_t slot =
            static_cast<std::size_t>(a) * n +
            fill[static_cast<std::size_t>(a) * (n + 1) + t]++ -
            inv_off[static_cast<std::size_t>(a) * (n + 1)];
        // Each digit's CSR occupies [a*n, (a+1)*n) of inv_src.
        inv_src[slot] = static_cast<State>(q);
      }
    }
  }
  auto inv_range = [&](unsigned a, State t) {
    std::size_t base_ix = static_cast<std::size_t>(a) * (n + 1);
    std::size_t lo = inv_off[base_ix + t] - inv_off[base_ix];
    std::size_t hi = inv_off[base_ix + t + 1] - inv_off[base_ix];
    return std::pair<std::size_t, std::size_t>{static_cast<std::size_t>(a) * n + lo,
                                               static_cast<std::size_t>(a) * n + hi};
  };

  Partition part(n);
  std::uint32_t other = part.split_initial(dfa.finals());

  std::vector<std::pair<std::uint32_t, unsigned>> worklist;
  std::vector<char> in_list;
  auto in_list_flag = [&](std::uint32_t blk, unsigned a) -> char& {
    std::size_t ix = static_cast<std::size_t>(blk) * b + a;
    if (ix >= in_list.size()) in_list.resize((blk + 1) * b, 0);
    return in_list[ix];
  };
  auto push = [&](std::uint32_t blk, unsigned a) {
    char& f = in_list_flag(blk, a);
    if (!f) {
      f = 1;
      worklist.emplace_back(blk, a);
    }
  };

  if (other != Partition::kNoBlock) {
    std::uint32_t smaller = part.size(0) <= part.size(other) ? 0 : other;
    for (unsigned a = 0; a < b; ++a) push(smaller, a);
  }

  std::vector<std::uint32_t> touched;
  std::vector<State> splitter_members;
  while (!worklist.empty()) {
    auto [splitter, a] = worklist.back();
    worklist.pop_back();
    in_list_flag(splitter, a) = 0;

    touched.clear();
    // Snapshot: marking a source inside the splitter block would reorder
    // the elements being iterated.
    splitter_members.clear();
    for (std::size_t i = 0; i < part.size(splitter); ++i) {
      splitter_members.push_back(part.element(splitter, i));
    }
    for (State t : splitter_members) {
      auto [lo, hi] = inv_range(a, t);
      for (std::size_t k = lo; k < hi; ++k) {
        State src = inv_src[k];
        if (!part.marked(src)) {
          std::uint32_t blk = part.block_of(src);
          if (part.marked_count(blk) == 0) touched.push_back(blk);
          part.mark(src);
        }
      }
    }
    for (std::uint32_t blk : touched) {
      std::uint32_t nb = part.split(blk);
      if (nb == Partition::kNoBlock) continue;
      for (unsigned d = 0; d < b; ++d) {
        if (in_list_flag(blk, d)) {
          push(nb, d);
        } else {
          push(part.size(nb) <= part.size(blk) ? nb : blk, d);
        }
      }
    }
  }

  // Quotient automaton over the blocks.
  std::size_t blocks = part.block_count();
  std::vector<State> qdelta(blocks * b);
  std::vector<char> qfinals(blocks, 0);
  for (std::uint32_t blk = 0; blk < blocks; ++blk) {
    State rep = part.element(blk, 0);
    qfinals[blk] = dfa.is_final(rep) ? 1 : 0;
    for (unsigned a = 0; a < b; ++a) {
      qdelta[static_cast<std::size_t>(blk) * b + a] =
          part.block_of(dfa.next(rep, a));
    }
  }
  Dfa quotient(dfa.base(), part.block_of(dfa.initial()), std::move(qdelta),
               std::move(qfinals));
  return canonical_form(quotient);
}

Dfa product(const Dfa& a, const Dfa& b,
            const std::function<bool(bool, bool)>& combine) {
  if (a.base() != b.base()) {
    throw std::invalid_argument("product of automata over different bases");
  }
  const unsigned base = a.base();
  std::vector<State> delta;
  std::vector<char> finals;
  std::vector<std::pair<State, State>> pairs;
  // Dense pair ids would cost n_a*n_b; hash only the reachable pairs.
  std::unordered_map<std::uint64_t, State> seen;
  auto intern = [&](State qa, State qb) {
    std::uint64_t key = (static_cast<std::uint64_t>(qa) << 32) | qb;
    auto [it, inserted] = seen.emplace(key, static_cast<State>(pairs.size()));
    if (inserted) pairs.emplace_back(qa, qb);
    return it->second;
  };
  intern(a.initial(), b.initial());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [qa, qb] = pairs[i];
    finals.push_back(combine(a.is_final(qa), b.is_final(qb)) ? 1 : 0);
    for (unsigned d = 0; d < base; ++d) {
      delta.push_back(intern(a.next(qa, d), b.next(qb, d)));
    }
  }
  return Dfa(base, 0, std::move(delta), std::move(finals));
}

bool equivalent(const Dfa& a, const Dfa& b) {
  if (a.base() != b.base()) {
    throw std::invalid_argument("equivalence of automata over different bases");
  }
  const unsigned base = a.base();
  const std::size_t n = a.state_count() + b.state_count();
  std::vector<State> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<State>(i);
  std::function<State(State)> find = [&](State x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto is_final = [&](State x) {
    return x < a.state_count()
               ? a.is_final(x)
               : b.is_final(static_cast<State>(x - a.state_count()));
  };
  auto next = [&](State x, unsigned d) {
    return x < a.state_count()
               ? a.next(x, d)
               : static_cast<State>(
                     b.next(static_cast<State>(x - a.state_count()), d) +
                     a.state_count());
  };

  std::vector<std::pair<State, State>> stack;
  stack.emplace_back(a.initial(),
                     static_cast<State>(b.initial() + a.state_count()));
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    State rx = find(x), ry = find(y);
    if (rx == ry) continue;
    if (is_final(rx) != is_final(ry)) return false;
    parent[rx] = ry;
    for (unsigned d = 0; d < base; ++d) {
      stack.emplace_back(next(rx, d), next(ry, d));
    }
  }
  return true;
}

std::vector<char> zero_tail_acceptance(const Dfa& dfa) {
  std::size_t n = dfa.state_count();
  std::vector<char> result(n, 2);  // 2 = unknown
  std::vector<State> path;
  for (std::size_t start = 0; start < n; ++start) {
    if (result[start] != 2) continue;
    path.clear();
    State q = static_cast<State>(start);
    while (result[q] == 2) {
      result[q] = 3;  // on current path
      path.push_back(q);
      q = dfa.next(q, 0);
    }
    char value;
    if (result[q] == 3) {
      // Hit our own path: a 0-cycle. It accepts iff a final lies on it.
      bool cycle_final = false;
      std::size_t cycle_start = path.size();
      while (cycle_start > 0 && path[cycle_start - 1] != q) --cycle_start;
      --cycle_start;
      for (std::size_t i = cycle_start; i < path.size(); ++i) {
        if (dfa.is_final(path[i])) cycle_final = true;
      }
      value = cycle_final ? 1 : 0;
      for (std::size_t i = cycle_start; i < path.size(); ++i) {
        result[path[i]] = value;
      }
      path.resize(cycle_start);
    } else {
      value = result[q];
    }
    for (std::size_t i = path.size(); i-- > 0;) {
      value = (dfa.is_final(path[i]) || value) ? 1 : 0;
      result[path[i]] = value;
    }
  }
  return result;
}

}  // namespace updfa
