#include "updfa/fuzz.hpp"

#include <algorithm>
#include <sstream>

#include "updfa/oracle.hpp"
#include "updfa/upcheck.hpp"

namespace updfa {

UpSet random_up_set(std::mt19937_64& rng, std::uint64_t max_period,
                    std::uint64_t max_threshold) {
  UpSet set;
  set.period = std::uniform_int_distribution<std::uint64_t>(1, max_period)(rng);
  set.threshold =
      std::uniform_int_distribution<std::uint64_t>(0, max_threshold)(rng);
  for (std::uint64_t r = 0; r < set.period; ++r) {
    if (rng() & 1) set.residues.push_back(r);
  }
  return set;
}

Dfa mutate_single_edge(const Dfa& dfa, std::mt19937_64& rng) {
  const std::size_t n = dfa.state_count();
  if (n < 2) throw std::invalid_argument("mutation needs at least two states");
  std::uniform_int_distribution<std::size_t> pick_state(0, n - 1);
  std::uniform_int_distribution<unsigned> pick_digit(0, dfa.base() - 1);
  std::size_t q = pick_state(rng);
  unsigned a = pick_digit(rng);
  State old = dfa.next(static_cast<State>(q), a);
  std::uniform_int_distribution<State> pick_target(0, static_cast<State>(n - 2));
  State target = pick_target(rng);
  if (target >= old) ++target;
  std::vector<State> delta = dfa.delta();
  delta[q * dfa.base() + a] = target;
  return Dfa::trimmed(dfa.base(), dfa.initial(), std::move(delta),
                      dfa.finals());
}

namespace {

constexpr std::size_t kWindow = 4096;
constexpr std::uint64_t kOracleMaxPeriod = 64;
constexpr std::uint64_t kOracleMaxThreshold = 512;

bool bitmaps_match_from(const Bitmap& a, const Bitmap& b, std::size_t from) {
  for (std::size_t i = from; i < a.size(); ++i) {
    if (a.get(i) != b.get(i)) return false;
  }
  return true;
}

}  // namespace

std::optional<std::string> check_verdict_agreement(const Dfa& dfa) {
  UpReport report = is_up(dfa);
  Bitmap actual = accepted_bitmap(dfa, kWindow);
  std::optional<UpSet> found =
      find_up_params(actual, kOracleMaxPeriod, kOracleMaxThreshold);

  if (report.verdict) {
    if (!report.parameters) {
      // Canonical parameters beyond desk scale: the window oracle cannot
      // contradict the verdict either way.
      return report.parameters_out_of_range
                 ? std::nullopt
                 : std::make_optional<std::string>(
                       "verdict UP without parameters");
    }
    // The parameters describe the language exactly from their threshold on;
    // below it the automaton may keep finitely many exceptional members the
    // UpSet form cannot encode. Confirm them on a window spanning several
    // periods past the threshold when that is affordable.
    const UpSet& params = *report.parameters;
    std::size_t window = kWindow;
    if (params.period <= (std::uint64_t{1} << 19) &&
        params.threshold + 2 * params.period > window) {
      window = static_cast<std::size_t>(
          std::min<std::uint64_t>(params.threshold + 4 * params.period,
                                  std::uint64_t{1} << 21));
    }
    Bitmap checked =
        window == kWindow ? actual : accepted_bitmap(dfa, window);
    Bitmap predicted = periodic_bitmap(params, window);
    std::size_t from = static_cast<std::size_t>(
        std::min<std::uint64_t>(params.threshold, window));
    if (!bitmaps_match_from(checked, predicted, from)) {
      return "extracted parameters disagree with the acceptance bitmap";
    }
    return std::nullopt;
  }

  if (found) {
    // A window fit is only a disagreement if it is exact.
    if (equivalent(dfa, build_up_automaton(*found, dfa.base()))) {
      std::ostringstream msg;
      msg << "verdict NOT_UP but language equals the UP set p=" << found->period
          << " m=" << found->threshold;
      return msg.str();
    }
  }
  return std::nullopt;
}

FuzzResult run_fuzz(const FuzzOptions& options) {
  FuzzResult result;
  std::mt19937_64 rng(options.seed);
  const unsigned bases[] = {2, 3, 10};
  for (int i = 0; i < options.count; ++i) {
    unsigned base = options.base ? options.base : bases[i % 3];
    UpSet set = random_up_set(rng, 48, 64);
    Dfa built = build_up_automaton(set, base);
    Dfa minimal = minimize(built);

    UpReport report = is_up_minimal(minimal);
    if (!report.verdict || !report.parameters) {
      std::ostringstream msg;
      msg << "iteration " << i << ": built UP automaton rejected";
      if (!report.failures.empty()) {
        msg << " (" << to_string(report.failures[0].condition) << ")";
      }
      result.failure = msg.str();
      result.counterexample = minimal;
      break;
    }
    Bitmap expect = periodic_bitmap(set, kWindow);
    Bitmap actual = accepted_bitmap(minimal, kWindow);
    Bitmap extracted = periodic_bitmap(*report.parameters, kWindow);
    if (!(expect == actual) || !(expect == extracted)) {
      std::ostringstream msg;
      msg << "iteration " << i << ": bitmap mismatch for p=" << set.period
          << " m=" << set.threshold;
      result.failure = msg.str();
      result.counterexample = minimal;
      break;
    }

    if (minimal.state_count() >= 2) {
      Dfa mutant = mutate_single_edge(minimal, rng);
      if (auto disagreement = check_verdict_agreement(mutant)) {
        std::ostringstream msg;
        msg << "iteration " << i << ": " << *disagreement;
        result.failure = msg.str();
        result.counterexample = mutant;
        break;
      }
    }
    ++result.iterations_run;
  }
  return result;
}

}  // namespace updfa
