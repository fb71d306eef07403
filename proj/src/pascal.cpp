#include "updfa/pascal.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace updfa {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t x, std::uint64_t e, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t r = 1;
  x %= m;
  while (e) {
    if (e & 1) r = mulmod(r, x, m);
    x = mulmod(x, x, m);
    e >>= 1;
  }
  return r;
}

// Inverse of a mod m for gcd(a, m) = 1, extended Euclid.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m);
  std::int64_t new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

void validate_residues(const std::vector<std::uint64_t>& residues,
                       std::uint64_t period) {
  for (std::uint64_t r : residues) {
    if (r >= period) {
      throw std::invalid_argument("residue " + std::to_string(r) +
                                  " not below period " +
                                  std::to_string(period));
    }
  }
}

}  // namespace

std::uint64_t mult_order(std::uint64_t base, std::uint64_t modulus) {
  if (modulus == 0) throw std::invalid_argument("modulus must be positive");
  if (std::gcd(base, modulus) != 1) {
    throw std::invalid_argument("base and modulus are not coprime");
  }
  if (modulus == 1) return 1;
  std::uint64_t cur = base % modulus;
  std::uint64_t psi = 1;
  while (cur != 1) {
    cur = mulmod(cur, base, modulus);
    ++psi;
  }
  return psi;
}

Dfa build_pascal(const PascalParams& params, unsigned base) {
  const std::uint64_t p = params.period;
  if (p == 0) throw std::invalid_argument("period must be positive");
  if (std::gcd<std::uint64_t>(p, base) != 1) {
    throw std::invalid_argument("period must be coprime with the base");
  }
  if (params.psi != mult_order(base, p)) {
    throw std::invalid_argument("psi is not the multiplicative order");
  }
  validate_residues(params.residues, p);
  const std::uint64_t psi = params.psi;
  if (p * psi > (std::uint64_t{1} << 27)) {
    throw std::invalid_argument("Pascal automaton too large");
  }
  const std::size_t n = static_cast<std::size_t>(p * psi);

  std::vector<char> in_r(p, 0);
  for (std::uint64_t r : params.residues) in_r[r] = 1;

  std::vector<std::uint64_t> bpow(psi);
  bpow[0] = 1 % p;
  for (std::uint64_t t = 1; t < psi; ++t) bpow[t] = mulmod(bpow[t - 1], base, p);

  std::vector<State> delta(n * base);
  std::vector<char> finals(n, 0);
  for (std::uint64_t s = 0; s < p; ++s) {
    for (std::uint64_t t = 0; t < psi; ++t) {
      State q = pascal_state(p, psi, s, t);
      finals[q] = in_r[s];
      std::uint64_t t2 = (t + 1) % psi;
      for (unsigned a = 0; a < base; ++a) {
        std::uint64_t s2 = (s + mulmod(a, bpow[t], p)) % p;
        delta[static_cast<std::size_t>(q) * base + a] =
            pascal_state(p, psi, s2, t2);
      }
    }
  }
  return Dfa(base, pascal_state(p, psi, 0, 0), std::move(delta),
             std::move(finals));
}

Dfa build_generalized_pascal(const std::vector<std::uint64_t>& residues,
                             std::uint64_t period, unsigned base) {
  PascalParams params;
  params.period = period;
  params.psi = mult_order(base, period);
  params.residues = residues;
  return build_pascal(params, base);
}

ModifiedTransitions to_modified(const Dfa& dfa,
                                const DigitPermutations& perms) {
  ModifiedTransitions mod;
  mod.zero = perms.per_digit[0];
  const StatePermutation& one = perms.per_digit[1];
  std::size_t n = dfa.state_count();
  mod.g.forward.resize(n);
  mod.g.inverse.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    mod.g.forward[q] = mod.zero.inverse[one.forward[q]];
  }
  for (std::size_t q = 0; q < n; ++q) {
    mod.g.inverse[mod.g.forward[q]] = static_cast<State>(q);
  }
  return mod;
}

bool check_digit_law(const Dfa& dfa, const ModifiedTransitions& mod) {
  const std::size_t n = dfa.state_count();
  for (std::size_t q = 0; q < n; ++q) {
    State cur = static_cast<State>(q);  // g^a(q), incrementally
    for (unsigned a = 0; a < dfa.base(); ++a) {
      if (dfa.next(static_cast<State>(q), a) != mod.zero.forward[cur]) {
        return false;
      }
      cur = mod.g.forward[cur];
    }
  }
  return true;
}

std::string to_string(PascalReject reject) {
  switch (reject) {
    case PascalReject::None: return "None";
    case PascalReject::NotGroup: return "NotGroup";
    case PascalReject::DigitLaw: return "DigitLaw";
    case PascalReject::NonCoprimePeriod: return "NonCoprimePeriod";
    case PascalReject::SizeMismatch: return "SizeMismatch";
    case PascalReject::ResidueOrbits: return "ResidueOrbits";
    case PascalReject::MarkingConflict: return "MarkingConflict";
  }
  return "?";
}

PascalRecognition recognize_pascal_quotient(const Dfa& dfa) {
  auto fail = [](PascalReject r) { return PascalRecognition{std::nullopt, r}; };
  const std::size_t n = dfa.state_count();
  const State i = dfa.initial();

  auto perms = group_permutations(dfa);
  if (!perms) return fail(PascalReject::NotGroup);
  ModifiedTransitions mod = to_modified(dfa, *perms);
  if (!check_digit_law(dfa, mod)) return fail(PascalReject::DigitLaw);

  // The g-circuit C through the initial state gives p and R.
  std::vector<std::uint32_t> circuit_pos(n, static_cast<std::uint32_t>(-1));
  std::vector<std::uint64_t> residues;
  std::uint64_t p = 0;
  {
    State q = i;
    do {
      circuit_pos[q] = static_cast<std::uint32_t>(p);
      if (dfa.is_final(q)) residues.push_back(p);
      q = mod.g.forward[q];
      ++p;
    } while (q != i);
  }
  if (std::gcd<std::uint64_t>(p, dfa.base()) != 1) {
    return fail(PascalReject::NonCoprimePeriod);
  }

  // Follow 0^{-1} from i; the first time C is crossed yields t, and the
  // g-distance of the crossing point yields s. A positive number of steps
  // is required, and the walk returns to i within its 0-cycle.
  std::uint64_t t = 0;
  std::uint64_t s = 0;
  {
    State q = i;
    for (std::size_t step = 1; step <= n; ++step) {
      q = mod.zero.inverse[q];
      if (circuit_pos[q] != static_cast<std::uint32_t>(-1)) {
        t = step;
        s = circuit_pos[q];
        break;
      }
    }
  }
  if (t == 0 || p * t != n) return fail(PascalReject::SizeMismatch);

  const std::uint64_t bt = powmod(dfa.base(), t, p);
  const std::uint64_t inv_bt = invmod(bt, p);

  // R must be a union of orbits of x -> x·b^t + s (mod p).
  {
    std::vector<char> in_r(p, 0);
    for (std::uint64_t r : residues) in_r[r] = 1;
    std::vector<char> seen(p, 0);
    for (std::uint64_t x0 = 0; x0 < p; ++x0) {
      if (seen[x0]) continue;
      char want = in_r[x0];
      std::uint64_t x = x0;
      do {
        if (in_r[x] != want) return fail(PascalReject::ResidueOrbits);
        seen[x] = 1;
        x = (mulmod(x, bt, p) + s) % p;
      } while (x != x0);
    }
  }

  // Marking traversal from i marked (0,0):
  //   (x,z)·g = (x + b^z, z)
  //   (x,z)·0 = (x, z+1)                      if z < t-1
  //             ((x - s)·(b^t)^{-1} mod p, 0) if z = t-1
  // Conflicts, repeated marks, uncovered states and finality mismatches all
  // reject.
  std::vector<std::uint64_t> bpow(t);
  bpow[0] = 1 % p;
  for (std::uint64_t z = 1; z < t; ++z) bpow[z] = mulmod(bpow[z - 1], dfa.base(), p);

  constexpr std::uint32_t kUnmarked = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> mark_x(n, kUnmarked), mark_z(n, 0);
  std::vector<State> state_of_mark(n, kNoState);
  std::vector<State> queue;
  queue.reserve(n);

  auto assign = [&](State q, std::uint64_t x, std::uint64_t z) -> bool {
    if (mark_x[q] != kUnmarked) {
      return mark_x[q] == x && mark_z[q] == z;
    }
    std::size_t slot = static_cast<std::size_t>(x) * t + z;
    if (state_of_mark[slot] != kNoState) return false;
    mark_x[q] = static_cast<std::uint32_t>(x);
    mark_z[q] = static_cast<std::uint32_t>(z);
    state_of_mark[slot] = q;
    queue.push_back(q);
    return true;
  };

  assign(i, 0, 0);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    State q = queue[head];
    std::uint64_t x = mark_x[q], z = mark_z[q];
    std::uint64_t gx = (x + bpow[z]) % p;
    if (!assign(mod.g.forward[q], gx, z)) {
      return fail(PascalReject::MarkingConflict);
    }
    std::uint64_t zx, zz;
    if (z + 1 < t) {
      zx = x;
      zz = z + 1;
    } else {
      zx = mulmod((x + p - s % p) % p, inv_bt, p);
      zz = 0;
    }
    if (!assign(mod.zero.forward[q], zx, zz)) {
      return fail(PascalReject::MarkingConflict);
    }
  }
  if (queue.size() != n) return fail(PascalReject::MarkingConflict);

  {
    std::vector<char> in_r(p, 0);
    for (std::uint64_t r : residues) in_r[r] = 1;
    for (std::size_t q = 0; q < n; ++q) {
      if (dfa.is_final(static_cast<State>(q)) != (in_r[mark_x[q]] != 0)) {
        return fail(PascalReject::MarkingConflict);
      }
    }
  }

  QuotientWitness w;
  w.period = p;
  w.residues = std::move(residues);
  w.s = s;
  w.t = t;
  w.marks.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    w.marks[q] = {mark_x[q], mark_z[q]};
  }
  return PascalRecognition{std::move(w), PascalReject::None};
}

std::vector<std::uint64_t> shift_initial_residues(const QuotientWitness& w,
                                                  std::uint64_t s2,
                                                  std::uint64_t t2,
                                                  unsigned base) {
  const std::uint64_t p = w.period;
  if (s2 >= p || t2 >= w.t) {
    throw std::invalid_argument("shift mark out of range");
  }
  std::uint64_t inv = invmod(powmod(base, t2, p), p);
  std::vector<std::uint64_t> shifted;
  shifted.reserve(w.residues.size());
  for (std::uint64_t r : w.residues) {
    shifted.push_back(mulmod((r + p - s2 % p) % p, inv, p));
  }
  std::sort(shifted.begin(), shifted.end());
  return shifted;
}

Dfa quotient_from_witness(const QuotientWitness& w, unsigned base) {
  const std::uint64_t p = w.period;
  const std::uint64_t t = w.t;
  const std::size_t n = w.marks.size();
  if (n != p * t) throw std::invalid_argument("witness marks have wrong size");

  std::vector<State> state_of_mark(n, kNoState);
  for (std::size_t q = 0; q < n; ++q) {
    auto [x, z] = w.marks[q];
    if (x >= p || z >= t) throw std::invalid_argument("mark out of range");
    std::size_t slot = static_cast<std::size_t>(x) * t + z;
    if (state_of_mark[slot] != kNoState) {
      throw std::invalid_argument("marks are not a bijection");
    }
    state_of_mark[slot] = static_cast<State>(q);
  }

  std::vector<std::uint64_t> bpow(t);
  bpow[0] = 1 % p;
  for (std::uint64_t z = 1; z < t; ++z) bpow[z] = mulmod(bpow[z - 1], base, p);
  const std::uint64_t inv_bt = invmod(powmod(base, t, p), p);

  std::vector<char> in_r(p, 0);
  for (std::uint64_t r : w.residues) in_r[r] = 1;

  std::vector<State> delta(n * base);
  std::vector<char> finals(n, 0);
  for (std::size_t q = 0; q < n; ++q) {
    auto [x0, z0] = w.marks[q];
    finals[q] = in_r[x0];
    for (unsigned a = 0; a < base; ++a) {
      // digit a = g^a then 0
      std::uint64_t x = (x0 + mulmod(a, bpow[z0], p)) % p;
      std::uint64_t z = z0;
      if (z + 1 < t) {
        ++z;
      } else {
        x = mulmod((x + p - w.s % p) % p, inv_bt, p);
        z = 0;
      }
      delta[static_cast<std::size_t>(q) * base + a] =
          state_of_mark[static_cast<std::size_t>(x) * t + z];
    }
  }
  std::size_t init_slot = 0;  // mark (0,0)
  return Dfa(base, state_of_mark[init_slot], std::move(delta),
             std::move(finals));
}

}  // namespace updfa
