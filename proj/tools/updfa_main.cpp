// Command-line front end: construction, UP checking, minimization,
// enumeration, DOT export and property fuzzing for digit automata.
//
// Exit codes: 0 success / UP, 1 NOT_UP, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "updfa/builders.hpp"
#include "updfa/dfa.hpp"
#include "updfa/fuzz.hpp"
#include "updfa/io.hpp"
#include "updfa/oracle.hpp"
#include "updfa/pascal.hpp"
#include "updfa/upcheck.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotUp = 1;
constexpr int kExitError = 2;

std::vector<std::uint64_t> parse_residues(const std::string& list) {
  std::vector<std::uint64_t> out;
  if (list.empty()) return out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw CLI::ValidationError("residues", "empty residue");
    out.push_back(std::stoull(item));
  }
  return out;
}

updfa::Dfa load_dfa(const std::string& path) {
  if (path == "-") return updfa::parse_dfa(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return updfa::parse_dfa(in);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Digit automata for ultimately periodic sets of numbers"};
  app.require_subcommand(1);

  // --- build ---------------------------------------------------------
  auto* build = app.add_subcommand("build", "construct an automaton");
  build->require_subcommand(1);
  unsigned base = 2;
  std::uint64_t period = 1, threshold = 0, modulus = 1;
  std::string residues_arg;
  std::string out_path = "-";
  bool post_minimize = false;

  auto add_common = [&](CLI::App* cmd, bool with_residues) {
    cmd->add_option("--base", base, "numeration base (2..36)")
        ->check(CLI::Range(2u, 36u))
        ->required();
    if (with_residues) {
      cmd->add_option("--residues", residues_arg,
                      "comma-separated accepted residues");
    }
    cmd->add_option("-o,--out", out_path, "output file ('-' for stdout)");
    cmd->add_flag("--minimize", post_minimize, "minimize before writing");
  };

  auto* build_pascal_cmd =
      build->add_subcommand("pascal", "Pascal automaton for residues mod p");
  add_common(build_pascal_cmd, true);
  build_pascal_cmd->add_option("--period", period, "period coprime with base")
      ->required();

  auto* build_upset_cmd = build->add_subcommand(
      "upset", "automaton for {n >= threshold : n mod period in residues}");
  add_common(build_upset_cmd, true);
  build_upset_cmd->add_option("--period", period, "period")->required();
  build_upset_cmd->add_option("--threshold", threshold, "threshold");

  auto* build_threshold_cmd =
      build->add_subcommand("threshold", "automaton for {n : n >= m}");
  add_common(build_threshold_cmd, false);
  build_threshold_cmd->add_option("--min", threshold, "threshold m")
      ->required();

  auto* build_divisor_cmd = build->add_subcommand(
      "divisor", "divisor tree for residues mod d, d dividing a base power");
  add_common(build_divisor_cmd, true);
  build_divisor_cmd->add_option("--modulus", modulus, "divisor d")->required();

  // --- check ---------------------------------------------------------
  auto* check = app.add_subcommand("check", "decide ultimate periodicity");
  std::string in_path;
  bool assume_minimal = false;
  check->add_option("input", in_path, "v1 automaton file ('-' for stdin)")
      ->required();
  check->add_flag("--assume-minimal", assume_minimal,
                  "skip minimization; the input must already be minimal");

  // --- enumerate -----------------------------------------------------
  auto* enumerate = app.add_subcommand("enumerate", "list accepted numbers");
  std::uint64_t limit = 100;
  enumerate->add_option("input", in_path, "v1 automaton file")->required();
  enumerate->add_option("--limit", limit, "enumerate numbers below this");

  // --- minimize ------------------------------------------------------
  auto* minimize_cmd = app.add_subcommand("minimize", "write the minimal DFA");
  minimize_cmd->add_option("input", in_path, "v1 automaton file")->required();
  minimize_cmd->add_option("-o,--out", out_path, "output file");

  // --- dot -----------------------------------------------------------
  auto* dot = app.add_subcommand("dot", "Graphviz export");
  dot->add_option("input", in_path, "v1 automaton file")->required();
  dot->add_option("-o,--out", out_path, "output file");

  // --- fuzz ----------------------------------------------------------
  auto* fuzz = app.add_subcommand("fuzz", "seeded property fuzzing");
  std::uint64_t seed = 0;
  int count = 100;
  unsigned fuzz_base = 0;
  fuzz->add_option("--seed", seed, "PRNG seed")->required();
  fuzz->add_option("--count", count, "iterations")->check(CLI::PositiveNumber);
  fuzz->add_option("--base", fuzz_base, "fixed base (default: rotate 2,3,10)")
      ->check(CLI::Range(2u, 36u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints the message / help text
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (build->parsed()) {
      std::vector<std::uint64_t> residues = parse_residues(residues_arg);
      updfa::Dfa dfa = [&]() -> updfa::Dfa {
        if (build_pascal_cmd->parsed()) {
          return updfa::build_generalized_pascal(residues, period, base);
        }
        if (build_upset_cmd->parsed()) {
          return updfa::build_up_automaton(
              updfa::UpSet{period, residues, threshold}, base);
        }
        if (build_threshold_cmd->parsed()) {
          return updfa::build_threshold(threshold, base);
        }
        return updfa::divisor_tree(modulus, base, residues);
      }();
      if (post_minimize) dfa = updfa::minimize(dfa);
      write_output(out_path, updfa::format_dfa(dfa));
      return kExitOk;
    }

    if (check->parsed()) {
      updfa::Dfa dfa = load_dfa(in_path);
      updfa::UpReport report =
          assume_minimal ? updfa::is_up_minimal(dfa) : updfa::is_up(dfa);
      std::cout << updfa::render_machine(report);
      return report.verdict ? kExitOk : kExitNotUp;
    }

    if (enumerate->parsed()) {
      updfa::Dfa dfa = load_dfa(in_path);
      updfa::Bitmap bits = updfa::accepted_bitmap(dfa, limit);
      bool first = true;
      for (std::size_t n = 0; n < bits.size(); ++n) {
        if (!bits.get(n)) continue;
        if (!first) std::cout << ' ';
        std::cout << n;
        first = false;
      }
      if (!first) std::cout << '\n';
      return kExitOk;
    }

    if (minimize_cmd->parsed()) {
      updfa::Dfa dfa = load_dfa(in_path);
      write_output(out_path, updfa::format_dfa(updfa::minimize(dfa)));
      return kExitOk;
    }

    if (dot->parsed()) {
      updfa::Dfa dfa = load_dfa(in_path);
      write_output(out_path, updfa::to_dot(dfa));
      return kExitOk;
    }

    if (fuzz->parsed()) {
      updfa::FuzzResult result =
          updfa::run_fuzz({seed, count, fuzz_base});
      if (!result.failure) {
        std::cout << result.iterations_run << " ok\n";
        return kExitOk;
      }
      std::cerr << "fuzz failure: " << *result.failure << "\n";
      if (result.counterexample) {
        std::string path = "fuzz-fail-" + std::to_string(seed) + "-" +
                           std::to_string(result.iterations_run) + ".dfa";
        write_output(path, updfa::format_dfa(*result.counterexample));
        std::cerr << "counterexample written to " << path << "\n";
      }
      return kExitNotUp;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
