#include "updfa/io.hpp"

#include <istream>
#include <sstream>
#include <vector>

namespace updfa {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

std::uint64_t parse_uint(const Line& line, const std::string& tok,
                         std::uint64_t max) {
  std::uint64_t value = 0;
  if (tok.empty()) throw ParseError(line.number, "expected a number");
  for (char c : tok) {
    if (c < '0' || c > '9') {
      throw ParseError(line.number, "not a number: '" + tok + "'");
    }
    if (value > max / 10) throw ParseError(line.number, "number too large");
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
  }
  if (value > max) throw ParseError(line.number, "number too large");
  return value;
}

}  // namespace

Dfa parse_dfa(std::istream& in) {
  std::vector<Line> lines = tokenize(in);
  std::size_t ix = 0;
  auto need = [&](const char* what) -> const Line& {
    if (ix >= lines.size()) {
      std::size_t last = lines.empty() ? 0 : lines.back().number;
      throw ParseError(last + 1, std::string("missing ") + what);
    }
    return lines[ix];
  };

  {
    const Line& header = need("'dfa v1' header");
    if (header.tokens.size() != 2 || header.tokens[0] != "dfa" ||
        header.tokens[1] != "v1") {
      throw ParseError(header.number, "expected 'dfa v1' header");
    }
    ++ix;
  }

  auto keyword_line = [&](const char* key, std::size_t max) {
    const Line& line = need(key);
    if (line.tokens.size() != 2 || line.tokens[0] != key) {
      throw ParseError(line.number,
                       std::string("expected '") + key + " <value>'");
    }
    std::uint64_t v = parse_uint(line, line.tokens[1], max);
    ++ix;
    return v;
  };

  const std::uint64_t base = keyword_line("base", 1u << 16);
  if (base < 2) throw ParseError(lines[ix - 1].number, "base must be >= 2");
  const std::uint64_t states = keyword_line("states", 1u << 28);
  if (states == 0) {
    throw ParseError(lines[ix - 1].number, "need at least one state");
  }
  const std::uint64_t initial = keyword_line("initial", states - 1);

  std::vector<char> finals(states, 0);
  {
    const Line& line = need("'finals' line");
    if (line.tokens[0] != "finals") {
      throw ParseError(line.number, "expected 'finals ...'");
    }
    for (std::size_t i = 1; i < line.tokens.size(); ++i) {
      std::uint64_t q = parse_uint(line, line.tokens[i], states - 1);
      finals[q] = 1;
    }
    ++ix;
  }

  std::vector<State> delta(states * base, kNoState);
  std::vector<char> have(states * base, 0);
  for (std::uint64_t k = 0; k < states * base; ++k) {
    const Line& line = need("'trans' line");
    if (line.tokens.size() != 4 || line.tokens[0] != "trans") {
      throw ParseError(line.number, "expected 'trans <q> <digit> <q2>'");
    }
    std::uint64_t q = parse_uint(line, line.tokens[1], states - 1);
    std::uint64_t a = parse_uint(line, line.tokens[2], base - 1);
    std::uint64_t t = parse_uint(line, line.tokens[3], states - 1);
    std::size_t slot = q * base + a;
    if (have[slot]) {
      throw ParseError(line.number, "duplicate transition for state " +
                                        std::to_string(q) + " digit " +
                                        std::to_string(a));
    }
    have[slot] = 1;
    delta[slot] = static_cast<State>(t);
    ++ix;
  }
  if (ix < lines.size()) {
    throw ParseError(lines[ix].number, "trailing content after transitions");
  }

  try {
    return Dfa(static_cast<unsigned>(base), static_cast<State>(initial),
               std::move(delta), std::move(finals));
  } catch (const std::invalid_argument& e) {
    std::size_t last = lines.empty() ? 0 : lines.back().number;
    throw ParseError(last, e.what());
  }
}

Dfa parse_dfa_string(const std::string& text) {
  std::istringstream in(text);
  return parse_dfa(in);
}

std::string format_dfa(const Dfa& dfa) {
  std::ostringstream out;
  out << "dfa v1\n";
  out << "base " << dfa.base() << "\n";
  out << "states " << dfa.state_count() << "\n";
  out << "initial " << dfa.initial() << "\n";
  out << "finals";
  for (State q : dfa.final_states()) out << ' ' << q;
  out << "\n";
  for (std::size_t q = 0; q < dfa.state_count(); ++q) {
    for (unsigned a = 0; a < dfa.base(); ++a) {
      out << "trans " << q << ' ' << a << ' '
          << dfa.next(static_cast<State>(q), a) << "\n";
    }
  }
  return out.str();
}

std::string to_dot(const Dfa& dfa) {
  std::ostringstream out;
  out << "digraph dfa {\n";
  out << "  rankdir=LR;\n";
  out << "  __start [shape=point];\n";
  for (std::size_t q = 0; q < dfa.state_count(); ++q) {
    out << "  s" << q << " [shape="
        << (dfa.is_final(static_cast<State>(q)) ? "doublecircle" : "circle")
        << "];\n";
  }
  out << "  __start -> s" << dfa.initial() << ";\n";
  for (std::size_t q = 0; q < dfa.state_count(); ++q) {
    // One edge per target, labels of parallel transitions joined by commas.
    for (unsigned a = 0; a < dfa.base(); ++a) {
      State t = dfa.next(static_cast<State>(q), a);
      bool first_for_target = true;
      for (unsigned prev = 0; prev < a; ++prev) {
        if (dfa.next(static_cast<State>(q), prev) == t) {
          first_for_target = false;
          break;
        }
      }
      if (!first_for_target) continue;
      out << "  s" << q << " -> s" << t << " [label=\"" << a;
      for (unsigned rest = a + 1; rest < dfa.base(); ++rest) {
        if (dfa.next(static_cast<State>(q), rest) == t) out << ',' << rest;
      }
      out << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace updfa
