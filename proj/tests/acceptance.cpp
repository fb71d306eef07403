// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run through ctest or directly; `--only N` restricts to one
// criterion.

#include <algorithm>
#include <chrono>
#include <cstring>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "updfa/builders.hpp"
#include "updfa/dfa.hpp"
#include "updfa/fuzz.hpp"
#include "updfa/oracle.hpp"
#include "updfa/pascal.hpp"
#include "updfa/upcheck.hpp"

#include "support/fixtures.hpp"
#include "support/moore.hpp"
#include "support/random_dfa.hpp"

using namespace updfa;
using namespace updfa::testing;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  int number;
  const char* name;
  bool (*run)(std::ostream& log);
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::uint64_t shift_period(const std::vector<std::uint64_t>& residues,
                           std::uint64_t p) {
  std::vector<char> in_r(p, 0);
  for (auto r : residues) in_r[r] = 1;
  for (std::uint64_t d = 1; d <= p; ++d) {
    if (p % d != 0) continue;
    bool invariant = true;
    for (std::uint64_t x = 0; x < p && invariant; ++x) {
      invariant = in_r[x] == in_r[(x + d) % p];
    }
    if (invariant) return d;
  }
  return p;
}

// --- 1: build -> minimize -> criterion -> parameters, vs the oracle -----

bool criterion_round_trip(std::ostream& log) {
  constexpr std::size_t kWindow = 10000;
  const std::uint64_t thresholds[] = {0, 1, 7, 100};
  const unsigned bases[] = {2, 3, 10};
  std::mt19937_64 rng(1001);
  long cases = 0, bad = 0;
  for (std::uint64_t p = 1; p <= 60; ++p) {
    std::vector<std::vector<std::uint64_t>> residue_sets;
    for (int k = 0; k < 20; ++k) {
      std::vector<std::uint64_t> r;
      for (std::uint64_t x = 0; x < p; ++x) {
        if (rng() & 1) r.push_back(x);
      }
      residue_sets.push_back(std::move(r));
    }
    for (const auto& residues : residue_sets) {
      for (std::uint64_t m : thresholds) {
        for (unsigned base : bases) {
          ++cases;
          UpSet set{p, residues, m};
          Dfa minimal = minimize(build_up_automaton(set, base));
          UpReport report = is_up_minimal(minimal);
          if (!report.verdict || !report.parameters) {
            if (++bad <= 3) {
              log << "  rejected: p=" << p << " m=" << m << " base=" << base
                  << "\n";
            }
            continue;
          }
          Bitmap want = periodic_bitmap(set, kWindow);
          if (!(accepted_bitmap(minimal, kWindow) == want) ||
              !(periodic_bitmap(*report.parameters, kWindow) == want)) {
            if (++bad <= 3) {
              log << "  bitmap mismatch: p=" << p << " m=" << m
                  << " base=" << base << "\n";
            }
          }
        }
      }
    }
  }
  log << "  " << cases << " parameter combinations";
  if (bad) log << ", " << bad << " failing";
  log << "\n";
  return bad == 0;
}

// --- 2: golden automata ------------------------------------------------

bool criterion_goldens(std::ostream& log) {
  bool ok = true;
  auto expect = [&](bool cond, const char* what) {
    if (!cond) {
      ok = false;
      log << "  golden failed: " << what << "\n";
    }
  };

  Dfa p23 = build_generalized_pascal({2}, 3, 2);
  expect(p23.state_count() == 6, "P_{2,3} has 6 states");
  {
    Bitmap bits = accepted_bitmap(p23, 100);
    bool good = true;
    for (std::size_t n = 0; n < 100; ++n) {
      good = good && bits.get(n) == (n % 3 == 2);
    }
    expect(good, "P_{2,3} accepts 2 mod 3");
  }
  {
    Bitmap bits = accepted_bitmap(divisor_tree(4, 2, {1}), 256);
    bool good = true;
    for (std::size_t n = 0; n < 256; ++n) {
      good = good && bits.get(n) == (n % 4 == 1);
    }
    expect(good, "divisor tree accepts 1 mod 4");
  }
  {
    Bitmap bits = accepted_bitmap(five_mod_twelve(), 30);
    bool good = true;
    for (std::size_t n = 0; n < 30; ++n) {
      good = good && bits.get(n) == (n == 5 || n == 17 || n == 29);
    }
    expect(good, "product accepts exactly {5,17,29} below 30");
  }
  {
    Bitmap bits = accepted_bitmap(build_psa({0, 2, 4, 5, 9}, 18, 3), 19);
    bool good = true;
    for (std::size_t n = 0; n < 19; ++n) {
      bool want = n == 0 || n == 2 || n == 4 || n == 5 || n == 9 || n == 18;
      good = good && bits.get(n) == want;
    }
    expect(good, "mod-18 automaton accepts exactly {0,2,4,5,9,18} below 19");
  }
  {
    Bitmap bits = accepted_bitmap(build_threshold(5, 2), 20);
    bool good = true;
    for (std::size_t n = 0; n < 20; ++n) {
      good = good && bits.get(n) == (n >= 5);
    }
    expect(good, "threshold automaton accepts exactly n >= 5 below 20");
  }
  {
    Bitmap bits = accepted_bitmap(build_up_automaton({24, {0}, 1}, 2), 1000);
    bool good = true;
    for (std::size_t n = 0; n < 1000; ++n) {
      good = good && bits.get(n) == (n > 0 && n % 24 == 0);
    }
    expect(good, "product accepts exactly positive multiples of 24 below 1000");
  }
  return ok;
}

// --- 3: negative verdicts with the falsifier ----------------------------

bool criterion_negative(std::ostream& log) {
  bool ok = true;
  for (auto [name, dfa] :
       {std::pair<const char*, Dfa>{"powers of two", powers_of_two()},
        {"even count of ones", even_one_count()}}) {
    UpReport report = is_up(dfa);
    if (report.verdict) {
      ok = false;
      log << "  " << name << " wrongly reported UP\n";
    }
    if (find_up_params(accepted_bitmap(dfa, 4096), 64, 512)) {
      ok = false;
      log << "  falsifier found small parameters for " << name << "\n";
    }
  }
  return ok;
}

// --- 4: Pascal-quotient recognition -------------------------------------

bool criterion_recognition(std::ostream& log) {
  std::mt19937_64 rng(1004);
  long cases = 0, bad = 0;
  for (unsigned base : {2u, 3u, 10u}) {
    for (std::uint64_t p = 1; p <= 50; ++p) {
      if (std::gcd<std::uint64_t>(p, base) != 1) continue;
      for (int k = 0; k < 10; ++k) {
        std::vector<std::uint64_t> residues;
        int guard = 0;
        do {
          residues.clear();
          for (std::uint64_t x = 0; x < p; ++x) {
            if (rng() & 1) residues.push_back(x);
          }
        } while (shift_period(residues, p) != p && ++guard < 500);
        if (shift_period(residues, p) != p) continue;  // p=… no canonical draw
        ++cases;

        Dfa minimal = minimize(build_generalized_pascal(residues, p, base));
        PascalRecognition rec = recognize_pascal_quotient(minimal);
        bool good = rec.witness && rec.witness->period == p &&
                    rec.witness->residues == residues &&
                    quotient_from_witness(*rec.witness, base) == minimal;
        if (!good) {
          if (++bad <= 3) {
            log << "  recognition failed: p=" << p << " base=" << base << "\n";
          }
        }
      }
    }
  }
  log << "  " << cases << " recognitions";
  if (bad) log << ", " << bad << " failing";
  log << "\n";
  return bad == 0;
}

// --- 5: mutation soundness ----------------------------------------------

bool criterion_mutations(std::ostream& log) {
  std::mt19937_64 rng(1005);
  const unsigned bases[] = {2, 3, 10};
  long mutations = 0, bad = 0;
  while (mutations < 1000) {
    UpSet set = random_up_set(rng, 48, 64);
    unsigned base = bases[mutations % 3];
    Dfa minimal = minimize(build_up_automaton(set, base));
    if (minimal.state_count() < 2) continue;
    for (int k = 0; k < 10 && mutations < 1000; ++k) {
      ++mutations;
      Dfa mutant = mutate_single_edge(minimal, rng);
      if (auto disagreement = check_verdict_agreement(mutant)) {
        if (++bad <= 3) log << "  " << *disagreement << "\n";
      }
    }
  }
  log << "  " << mutations << " mutations";
  if (bad) log << ", " << bad << " disagreeing";
  log << "\n";
  return bad == 0;
}

// --- 6: near-linear criterion check --------------------------------------

bool criterion_scaling(std::ostream& log) {
  auto timed_check = [&](unsigned exponent) {
    std::uint64_t period = std::uint64_t{1} << exponent;
    Dfa built = build_up_automaton({period, {0}, 1}, 2);
    std::vector<double> samples;
    UpReport report;
    for (int rep = 0; rep < 6; ++rep) {  // first run warms caches
      auto t0 = Clock::now();
      report = is_up_minimal(built);
      double elapsed = seconds_since(t0);
      if (rep > 0) samples.push_back(elapsed);
    }
    std::sort(samples.begin(), samples.end());
    double median = samples[samples.size() / 2];
    log << "  2^" << exponent << ": " << built.state_count() << " states, "
        << median << " s, verdict=" << (report.verdict ? "UP" : "NOT_UP")
        << "\n";
    return std::tuple<double, bool, std::size_t>(median, report.verdict,
                                                 built.state_count());
  };

  auto [time_small, up_small, n_small] = timed_check(17);
  auto [time_large, up_large, n_large] = timed_check(18);
  bool ok = true;
  if (!up_small || !up_large) {
    log << "  large UP automaton rejected\n";
    ok = false;
  }
  if (n_small < 100000 || n_large < 200000) {
    log << "  automata smaller than intended\n";
    ok = false;
  }
  if (time_small > 5.0 || time_large > 5.0) {
    log << "  a run exceeded 5 s\n";
    ok = false;
  }
  double ratio = time_large / time_small;
  log << "  time ratio " << ratio << " for size ratio "
      << double(n_large) / double(n_small) << "\n";
  if (ratio > 2.5) {
    log << "  ratio above 2.5\n";
    ok = false;
  }
  return ok;
}

// --- 7: Hopcroft vs Moore -----------------------------------------------

bool criterion_minimization(std::ostream& log) {
  std::mt19937_64 rng(1007);
  long bad = 0;
  for (int i = 0; i < 200; ++i) {
    unsigned base = (i % 2) ? 3 : 2;
    Dfa dfa = random_dfa(rng, 200, base);
    if (!(minimize(dfa) == moore_minimize(dfa))) {
      if (++bad <= 3) log << "  mismatch on automaton " << i << "\n";
    }
  }
  log << "  200 automata";
  if (bad) log << ", " << bad << " mismatching";
  log << "\n";
  return bad == 0;
}

const Criterion kCriteria[] = {
    {1, "round-trip completeness with oracle-exact parameters",
     criterion_round_trip},
    {2, "golden automata", criterion_goldens},
    {3, "negative verdicts confirmed by the falsifier", criterion_negative},
    {4, "Pascal-quotient recognition and witness reconstruction",
     criterion_recognition},
    {5, "mutation soundness against the oracle", criterion_mutations},
    {6, "near-linear criterion check at 1e5..2e5 states", criterion_scaling},
    {7, "Hopcroft minimization against the Moore oracle",
     criterion_minimization},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0) only = std::atoi(argv[i + 1]);
  }
  int failures = 0;
  for (const Criterion& criterion : kCriteria) {
    if (only && criterion.number != only) continue;
    std::ostringstream log;
    auto t0 = Clock::now();
    bool pass = false;
    try {
      pass = criterion.run(log);
    } catch (const std::exception& e) {
      log << "  exception: " << e.what() << "\n";
    }
    double elapsed = seconds_since(t0);
    std::cout << "criterion " << criterion.number << " "
              << (pass ? "PASS" : "FAIL") << " " << criterion.name << " ("
              << elapsed << " s)\n"
              << log.str();
    if (!pass) ++failures;
  }
  return failures;
}
