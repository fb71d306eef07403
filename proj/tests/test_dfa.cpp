#include "updfa/dfa.hpp"

#include <random>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/moore.hpp"
#include "support/random_dfa.hpp"
#include "updfa/builders.hpp"
#include "updfa/io.hpp"
#include "updfa/oracle.hpp"
#include "updfa/pascal.hpp"

using namespace updfa;
using namespace updfa::testing;

TEST_CASE("word value") {
  CHECK(word_value({}, 2) == 0);
  CHECK(word_value({1, 0, 1}, 2) == 5);
  CHECK(word_value({2, 0, 1}, 3) == 11);
  CHECK(word_value({1, 0, 1, 0, 0}, 2) == 5);  // trailing zeros
  CHECK_THROWS_AS(word_value({2}, 2), std::invalid_argument);
  CHECK_THROWS_AS(word_value(Word(70, 1), 2), std::overflow_error);
}

TEST_CASE("canonical representation") {
  CHECK(lsdf_rep(0, 2).empty());
  CHECK(lsdf_rep(5, 2) == Word{1, 0, 1});
  CHECK(lsdf_rep(12, 3) == Word{0, 1, 1});
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    unsigned base = 2 + rng() % 9;
    std::uint64_t n = rng() % 1000000;
    Word rep = lsdf_rep(n, base);
    CHECK(word_value(rep, base) == n);
    if (!rep.empty()) CHECK(rep.back() != 0);
  }
}

TEST_CASE("value splits at any cut") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    unsigned base = 2 + rng() % 9;
    Word u = random_word(rng, 8, base);
    Word v = random_word(rng, 8, base);
    Word uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    std::uint64_t place = 1;
    for (std::size_t k = 0; k < u.size(); ++k) place *= base;
    CHECK(word_value(uv, base) ==
          word_value(u, base) + place * word_value(v, base));
  }
}

TEST_CASE("run and word acceptance") {
  Dfa p23 = build_generalized_pascal({2}, 3, 2);
  SUBCASE("empty word is the identity") {
    for (State q = 0; q < p23.state_count(); ++q) CHECK(p23.run(q, {}) == q);
  }
  SUBCASE("two steps of the Pascal transition") {
    // (0,0)·0 = (0,1), then (0,1)·1 = (2,0).
    CHECK(p23.run(pascal_state(3, 2, 0, 0), {0, 1}) ==
          pascal_state(3, 2, 2, 0));
  }
  SUBCASE("word acceptance") {
    CHECK(p23.accepts_word({0, 1}));
    CHECK_FALSE(p23.accepts_word({}));
    CHECK_THROWS_AS(p23.accepts_word({2}), std::invalid_argument);
  }
  SUBCASE("threshold automaton run") {
    Dfa d5 = build_threshold(5, 2);
    State leaf = d5.run(d5.initial(), {1, 0, 1});
    CHECK(d5.is_final(leaf));
    CHECK(d5.accepts_word({1, 0, 1}));
    CHECK(d5.next(leaf, 0) == leaf);
  }
}

TEST_CASE("number acceptance") {
  Dfa p23 = build_generalized_pascal({2}, 3, 2);
  CHECK(p23.accepts_number(2));
  CHECK_FALSE(p23.accepts_number(3));
  CHECK(five_mod_twelve().accepts_number(17));

  SUBCASE("agrees with zero-padded word acceptance") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 30; ++i) {
      Dfa dfa = random_dfa(rng, 12, 2 + rng() % 2);
      for (std::uint64_t n = 0; n < 40; ++n) {
        bool padded = false;
        Word rep = lsdf_rep(n, dfa.base());
        for (std::size_t k = 0; k <= 2 * dfa.state_count(); ++k) {
          if (dfa.accepts_word(rep)) padded = true;
          rep.push_back(0);
        }
        CHECK(dfa.accepts_number(n) == padded);
      }
    }
  }
}

TEST_CASE("zero tail acceptance matches the direct walk") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 40; ++i) {
    Dfa dfa = random_dfa(rng, 20, 2 + rng() % 3);
    std::vector<char> tail = zero_tail_acceptance(dfa);
    for (State q = 0; q < dfa.state_count(); ++q) {
      bool direct = false;
      State cur = q;
      for (std::size_t step = 0; step <= dfa.state_count(); ++step) {
        if (dfa.is_final(cur)) direct = true;
        cur = dfa.next(cur, 0);
      }
      CHECK(static_cast<bool>(tail[q]) == direct);
    }
  }
}

TEST_CASE("construction validates the table") {
  CHECK_THROWS_AS(Dfa(2, 0, {0, 1}, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Dfa(2, 5, {0, 0}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(Dfa(2, 0, {0, 0, 1, 1}, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Dfa(1, 0, {0}, {1}), std::invalid_argument);
  // trimmed drops the unreachable state instead.
  Dfa cut = Dfa::trimmed(2, 0, {0, 0, 1, 1}, {1, 0});
  CHECK(cut.state_count() == 1);
  CHECK(cut.is_final(0));
}

TEST_CASE("minimization") {
  Dfa p23 = build_generalized_pascal({2}, 3, 2);
  Dfa min_p23 = minimize(p23);

  SUBCASE("agrees with the Moore oracle") {
    CHECK(min_p23 == moore_minimize(p23));
    CHECK(min_p23.state_count() == 3);
  }
  SUBCASE("idempotent") { CHECK(minimize(min_p23) == min_p23); }
  SUBCASE("language preserved") {
    CHECK(equivalent(p23, min_p23));
    CHECK(accepted_bitmap(p23, 500) == accepted_bitmap(min_p23, 500));
  }
  SUBCASE("duplicated structure collapses") {
    // Two interleaved copies of min_p23 over a doubled state set.
    std::size_t n = min_p23.state_count();
    std::vector<State> delta(2 * n * 2);
    std::vector<char> finals(2 * n);
    for (std::size_t q = 0; q < n; ++q) {
      for (unsigned a = 0; a < 2; ++a) {
        State t = min_p23.next(static_cast<State>(q), a);
        delta[(2 * q) * 2 + a] = static_cast<State>(2 * t + 1);
        delta[(2 * q + 1) * 2 + a] = static_cast<State>(2 * t);
      }
      finals[2 * q] = finals[2 * q + 1] = min_p23.is_final(q) ? 1 : 0;
    }
    Dfa doubled(2, static_cast<State>(2 * min_p23.initial()), std::move(delta),
                std::move(finals));
    CHECK(minimize(doubled) == min_p23);
  }
  SUBCASE("random automata against Moore") {
    std::mt19937_64 rng(15);
    for (int i = 0; i < 60; ++i) {
      Dfa dfa = random_dfa(rng, 60, 2 + rng() % 2);
      Dfa hopcroft = minimize(dfa);
      Dfa moore = moore_minimize(dfa);
      CHECK(hopcroft == moore);
      CHECK(equivalent(dfa, hopcroft));
      std::size_t window = i < 10 ? 10000 : 300;
      CHECK(accepted_bitmap(dfa, window) == accepted_bitmap(hopcroft, window));
    }
  }
}

TEST_CASE("products") {
  Dfa p23 = build_generalized_pascal({2}, 3, 2);
  auto land = [](bool a, bool b) { return a && b; };

  SUBCASE("diagonal") { CHECK(equivalent(product(p23, p23, land), p23)); }
  SUBCASE("universal acceptor is the identity") {
    CHECK(equivalent(product(p23, one_state(2, true), land), p23));
  }
  SUBCASE("congruent to 5 mod 12") {
    Bitmap bits = accepted_bitmap(five_mod_twelve(), 30);
    for (std::size_t n = 0; n < 30; ++n) {
      CHECK(bits.get(n) == (n % 12 == 5));
    }
  }
  SUBCASE("word acceptance is the conjunction") {
    std::mt19937_64 rng(16);
    for (int i = 0; i < 20; ++i) {
      Dfa a = random_dfa(rng, 15, 2);
      Dfa b = random_dfa(rng, 15, 2);
      Dfa prod = product(a, b, land);
      for (int k = 0; k < 60; ++k) {
        Word w = random_word(rng, 12, 2);
        CHECK(prod.accepts_word(w) ==
              (a.accepts_word(w) && b.accepts_word(w)));
      }
    }
  }
  SUBCASE("accepted-number bitmap is the bitwise AND") {
    // Number-level conjunction needs operands whose acceptance is stable
    // under appending zeros; the library's constructions all are.
    std::mt19937_64 rng(16);
    for (int i = 0; i < 15; ++i) {
      std::uint64_t pa_mod = 1 + rng() % 20;
      std::uint64_t m = rng() % 30;
      std::vector<std::uint64_t> residues;
      for (std::uint64_t r = 0; r < pa_mod; ++r) {
        if (rng() & 1) residues.push_back(r);
      }
      Dfa a = build_psa(residues, pa_mod, 2);
      Dfa b = build_threshold(m, 2);
      Bitmap pa = accepted_bitmap(a, 400);
      Bitmap pb = accepted_bitmap(b, 400);
      Bitmap pp = accepted_bitmap(product(a, b, land), 400);
      for (std::size_t n = 0; n < 400; ++n) {
        CHECK(pp.get(n) == (pa.get(n) && pb.get(n)));
      }
    }
  }
  SUBCASE("base mismatch") {
    CHECK_THROWS_AS(product(p23, one_state(3, true), land),
                    std::invalid_argument);
  }
}

TEST_CASE("group automaton detection") {
  SUBCASE("Pascal automata are group automata") {
    auto perms = group_permutations(build_generalized_pascal({2}, 3, 2));
    REQUIRE(perms.has_value());
    for (const auto& perm : perms->per_digit) {
      for (std::size_t q = 0; q < perm.forward.size(); ++q) {
        CHECK(perm.inverse[perm.forward[q]] == q);
      }
    }
  }
  SUBCASE("threshold automata are not") {
    CHECK_FALSE(group_permutations(build_threshold(5, 2)).has_value());
  }
  SUBCASE("one state") {
    auto perms = group_permutations(one_state(4, false));
    REQUIRE(perms.has_value());
    CHECK(perms->per_digit[3].forward[0] == 0);
  }
}

TEST_CASE("equivalence") {
  Dfa p23 = build_generalized_pascal({2}, 3, 2);
  CHECK(equivalent(p23, minimize(p23)));
  CHECK_FALSE(equivalent(p23, build_generalized_pascal({1}, 3, 2)));
  CHECK_THROWS_AS(equivalent(p23, one_state(3, true)), std::invalid_argument);

  SUBCASE("agrees with minimal-automaton equality") {
    std::mt19937_64 rng(18);
    for (int i = 0; i < 60; ++i) {
      // Small automata so that equal languages actually occur.
      Dfa a = random_dfa(rng, 4, 2);
      Dfa b = random_dfa(rng, 4, 2);
      CHECK(equivalent(a, b) == (minimize(a) == minimize(b)));
    }
  }
}

TEST_CASE("text format") {
  Dfa p23 = build_generalized_pascal({2}, 3, 2);
  SUBCASE("round trip") {
    CHECK(parse_dfa_string(format_dfa(p23)) == p23);
    Dfa no_finals = one_state(2, false);
    CHECK(parse_dfa_string(format_dfa(no_finals)) == no_finals);
  }
  SUBCASE("comments and blank lines") {
    Dfa d = parse_dfa_string(
        "# comment\ndfa v1\nbase 2\nstates 1\ninitial 0\nfinals 0\n\n"
        "trans 0 0 0  # loop\ntrans 0 1 0\n");
    CHECK(d.state_count() == 1);
    CHECK(d.is_final(0));
  }
  SUBCASE("rejects malformed input") {
    CHECK_THROWS_AS(parse_dfa_string("dfa v2\n"), ParseError);
    CHECK_THROWS_AS(  // missing transition
        parse_dfa_string("dfa v1\nbase 2\nstates 1\ninitial 0\nfinals\n"
                         "trans 0 0 0\n"),
        ParseError);
    CHECK_THROWS_AS(  // duplicate transition
        parse_dfa_string("dfa v1\nbase 2\nstates 1\ninitial 0\nfinals\n"
                         "trans 0 0 0\ntrans 0 0 0\n"),
        ParseError);
    CHECK_THROWS_AS(  // out-of-range target
        parse_dfa_string("dfa v1\nbase 2\nstates 1\ninitial 0\nfinals\n"
                         "trans 0 0 1\ntrans 0 1 0\n"),
        ParseError);
    CHECK_THROWS_AS(  // out-of-range digit
        parse_dfa_string("dfa v1\nbase 2\nstates 1\ninitial 0\nfinals\n"
                         "trans 0 2 0\ntrans 0 1 0\n"),
        ParseError);
    CHECK_THROWS_AS(  // unreachable state
        parse_dfa_string("dfa v1\nbase 2\nstates 2\ninitial 0\nfinals\n"
                         "trans 0 0 0\ntrans 0 1 0\n"
                         "trans 1 0 0\ntrans 1 1 0\n"),
        ParseError);
    CHECK_THROWS_AS(parse_dfa_string(""), ParseError);
  }
  SUBCASE("random round trips") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 25; ++i) {
      Dfa dfa = random_dfa(rng, 30, 2 + rng() % 9);
      CHECK(parse_dfa_string(format_dfa(dfa)) == dfa);
    }
  }
}

TEST_CASE("dot export") {
  Dfa p23 = build_generalized_pascal({2}, 3, 2);
  std::string dot = to_dot(p23);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("__start [shape=point]") != std::string::npos);
  CHECK(dot.find("__start -> s0") != std::string::npos);
  CHECK(dot.find("s4 [shape=doublecircle]") != std::string::npos);
  CHECK(dot.find("s0 [shape=circle]") != std::string::npos);
  // One node line per state.
  std::size_t count = 0, pos = 0;
  while ((pos = dot.find("[shape=circle]", pos)) != std::string::npos) {
    ++count;
    pos += 1;
  }
  pos = 0;
  while ((pos = dot.find("[shape=doublecircle]", pos)) != std::string::npos) {
    ++count;
    pos += 1;
  }
  CHECK(count == p23.state_count());
}
