#include "updfa/upcheck.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace updfa {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr std::uint64_t kExtractCap = std::uint64_t{1} << 26;

}  // namespace

Condensation condense(const Dfa& dfa) {
  const std::size_t n = dfa.state_count();
  const unsigned base = dfa.base();
  Condensation cond;
  cond.scc_of.assign(n, static_cast<std::uint32_t>(-1));

  // Iterative Tarjan.
  constexpr std::uint32_t kUnvisited = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> index(n, kUnvisited), lowlink(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<State> stack;
  struct Frame {
    State v;
    unsigned digit;
  };
  std::vector<Frame> frames;
  std::uint32_t next_index = 0;

  auto visit = [&](State root) {
    frames.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.digit < base) {
        State w = dfa.next(f.v, f.digit++);
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[f.v] = std::min(lowlink[f.v], index[w]);
        }
        continue;
      }
      State v = f.v;
      frames.pop_back();
      if (!frames.empty()) {
        lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
      }
      if (lowlink[v] == index[v]) {
        std::uint32_t id = static_cast<std::uint32_t>(cond.members.size());
        cond.members.emplace_back();
        State w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          cond.scc_of[w] = id;
          cond.members.back().push_back(w);
        } while (w != v);
      }
    }
  };
  visit(dfa.initial());

  for (auto& scc : cond.members) std::sort(scc.begin(), scc.end());

  cond.has_internal_edge.assign(cond.members.size(), 0);
  for (std::size_t q = 0; q < n; ++q) {
    std::uint32_t from = cond.scc_of[q];
    for (unsigned a = 0; a < base; ++a) {
      std::uint32_t to = cond.scc_of[dfa.next(static_cast<State>(q), a)];
      if (to == from) {
        cond.has_internal_edge[from] = 1;
      } else {
        cond.dag_edges.emplace_back(from, to);
      }
    }
  }
  std::sort(cond.dag_edges.begin(), cond.dag_edges.end());
  cond.dag_edges.erase(
      std::unique(cond.dag_edges.begin(), cond.dag_edges.end()),
      cond.dag_edges.end());
  return cond;
}

std::vector<SccClass> classify(const Dfa& dfa, const Condensation& cond) {
  std::vector<SccClass> classes(cond.scc_count(), SccClass::Trivial);
  std::vector<char> internal_nonzero(cond.scc_count(), 0);
  for (std::size_t q = 0; q < dfa.state_count(); ++q) {
    std::uint32_t c = cond.scc_of[q];
    for (unsigned a = 1; a < dfa.base(); ++a) {
      if (cond.scc_of[dfa.next(static_cast<State>(q), a)] == c) {
        internal_nonzero[c] = 1;
      }
    }
  }
  for (std::size_t c = 0; c < cond.scc_count(); ++c) {
    if (!cond.has_internal_edge[c]) continue;  // Trivial
    classes[c] = internal_nonzero[c] ? SccClass::Type1 : SccClass::Type2;
  }
  return classes;
}

std::string to_string(UpCondition c) {
  switch (c) {
    case UpCondition::Up0: return "UP0";
    case UpCondition::Up1: return "UP1";
    case UpCondition::Up2: return "UP2";
    case UpCondition::Up3: return "UP3";
    case UpCondition::Up4: return "UP4";
    case UpCondition::NotMinimalInput: return "NotMinimalInput";
  }
  return "?";
}

std::vector<State> check_up0(const Dfa& dfa) {
  std::vector<State> violating;
  for (std::size_t q = 0; q < dfa.state_count(); ++q) {
    State s = static_cast<State>(q);
    if (dfa.is_final(s) != dfa.is_final(dfa.next(s, 0))) {
      violating.push_back(s);
    }
  }
  return violating;
}

std::vector<UpFailure> check_up1_up2(const Dfa& dfa, const Condensation& cond,
                                     const std::vector<SccClass>& classes) {
  std::vector<UpFailure> failures;
  const std::size_t sccs = cond.scc_count();

  std::vector<std::vector<std::uint32_t>> successors(sccs);
  for (auto [from, to] : cond.dag_edges) successors[from].push_back(to);

  for (std::uint32_t c = 0; c < sccs; ++c) {
    if (classes[c] == SccClass::Type1) {
      if (!successors[c].empty()) {
        // Locate one exiting transition as the witness.
        UpFailure f{UpCondition::Up1, c, kNoState, 0, PascalReject::None};
        for (State q : cond.members[c]) {
          for (unsigned a = 0; a < dfa.base() && f.state == kNoState; ++a) {
            if (cond.scc_of[dfa.next(q, a)] != c) {
              f.state = q;
              f.digit = a;
            }
          }
          if (f.state != kNoState) break;
        }
        failures.push_back(f);
      }
      continue;
    }
    if (classes[c] != SccClass::Type2) continue;

    const auto& members = cond.members[c];
    // Simple 0-circuit: the 0-successor of every member stays inside, and
    // following 0 from one member walks through all of them exactly once.
    bool circuit = true;
    for (State q : members) {
      if (cond.scc_of[dfa.next(q, 0)] != c) {
        failures.push_back({UpCondition::Up2, c, q, 0, PascalReject::None});
        circuit = false;
        break;
      }
    }
    if (circuit) {
      State q = members[0];
      std::size_t steps = 0;
      do {
        q = dfa.next(q, 0);
        ++steps;
      } while (q != members[0] && steps <= members.size());
      if (steps != members.size()) {
        failures.push_back(
            {UpCondition::Up2, c, members[0], 0, PascalReject::None});
      }
    }
    if (successors[c].size() != 1 ||
        classes[successors[c][0]] != SccClass::Type1 ||
        !successors[successors[c][0]].empty()) {
      failures.push_back(
          {UpCondition::Up2, c, members[0], 0, PascalReject::None});
    }
  }
  return failures;
}

Up3Result check_up3(const Dfa& dfa, const Condensation& cond,
                    const std::vector<SccClass>& classes) {
  Up3Result result;
  const unsigned base = dfa.base();
  std::vector<State> local(dfa.state_count(), kNoState);
  for (std::uint32_t c = 0; c < cond.scc_count(); ++c) {
    if (classes[c] != SccClass::Type1) continue;
    const auto& members = cond.members[c];
    for (std::size_t i = 0; i < members.size(); ++i) {
      local[members[i]] = static_cast<State>(i);
    }
    std::vector<State> delta(members.size() * base);
    std::vector<char> finals(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      finals[i] = dfa.is_final(members[i]) ? 1 : 0;
      for (unsigned a = 0; a < base; ++a) {
        delta[i * base + a] = local[dfa.next(members[i], a)];
      }
    }
    Dfa sub(base, 0, std::move(delta), std::move(finals));
    PascalRecognition rec = recognize_pascal_quotient(sub);
    if (rec.witness) {
      result.witnesses.emplace(c, std::move(*rec.witness));
    } else {
      result.failures.push_back(
          {UpCondition::Up3, c, members[0], 0, rec.reject});
    }
  }
  return result;
}

Up4Result check_up4(const Dfa& dfa, const Condensation& cond,
                    const std::vector<SccClass>& classes,
                    const std::map<std::uint32_t, QuotientWitness>& witnesses) {
  (void)witnesses;
  Up4Result result;
  const unsigned base = dfa.base();

  std::vector<std::vector<std::uint32_t>> successors(cond.scc_count());
  for (auto [from, to] : cond.dag_edges) successors[from].push_back(to);

  // Inverse digit permutations inside each Type 1 SCC, built on demand.
  std::vector<State> inv(dfa.state_count() * base, kNoState);
  std::vector<char> inv_ready(cond.scc_count(), 0);
  auto prepare_target = [&](std::uint32_t d) {
    if (inv_ready[d]) return;
    inv_ready[d] = 1;
    for (State q : cond.members[d]) {
      for (unsigned a = 0; a < base; ++a) {
        inv[static_cast<std::size_t>(dfa.next(q, a)) * base + a] = q;
      }
    }
  };

  for (std::uint32_t c = 0; c < cond.scc_count(); ++c) {
    if (classes[c] != SccClass::Type2) continue;
    const std::uint32_t d = successors[c][0];
    prepare_target(d);
    const auto& circuit = cond.members[c];
    const std::size_t len = circuit.size();
    const State q0 = circuit[0];

    // Anchor: the embedding must satisfy f(q0)·a = q0·a for every nonzero
    // digit, which forces f(q0).
    State anchor = kNoState;
    bool ok = true;
    for (unsigned a = 1; a < base; ++a) {
      State target = dfa.next(q0, a);
      State pre = inv[static_cast<std::size_t>(target) * base + a];
      if (pre == kNoState || (anchor != kNoState && pre != anchor)) {
        result.failures.push_back({UpCondition::Up4, c, q0, a,
                                   PascalReject::None});
        ok = false;
        break;
      }
      anchor = pre;
    }
    if (!ok) continue;

    // The 0-orbit of the anchor inside D must have exactly the circuit's
    // length, which makes the propagated map injective and well defined.
    {
      std::size_t orbit = 0;
      State q = anchor;
      do {
        q = dfa.next(q, 0);
        ++orbit;
      } while (q != anchor && orbit <= dfa.state_count());
      if (orbit != len) {
        result.failures.push_back({UpCondition::Up4, c, q0, 0,
                                   PascalReject::None});
        continue;
      }
    }

    Embedding embedding;
    State q = q0;
    State image = anchor;
    for (std::size_t step = 0; step < len && ok; ++step) {
      embedding.map.emplace_back(q, image);
      for (unsigned a = 1; a < base; ++a) {
        if (dfa.next(q, a) != dfa.next(image, a)) {
          result.failures.push_back({UpCondition::Up4, c, q, a,
                                     PascalReject::None});
          ok = false;
          break;
        }
      }
      q = dfa.next(q, 0);
      image = dfa.next(image, 0);
    }
    if (ok) result.embeddings.emplace(c, std::move(embedding));
  }
  return result;
}

UpSet extract_parameters(const Dfa& dfa, const Condensation& cond,
                         const std::map<std::uint32_t, QuotientWitness>& witnesses) {
  const unsigned base = dfa.base();
  const std::size_t sccs = cond.scc_count();

  // Longest path (in edges) from the root SCC, over the DAG in topological
  // order. Tarjan ids are reverse-topological: process them descending.
  std::vector<std::uint64_t> depth(sccs, 0);
  std::vector<std::vector<std::uint32_t>> successors(sccs);
  for (auto [from, to] : cond.dag_edges) successors[from].push_back(to);
  for (std::uint32_t c = static_cast<std::uint32_t>(sccs); c-- > 0;) {
    for (std::uint32_t to : successors[c]) {
      depth[to] = std::max(depth[to], depth[c] + 1);
    }
  }
  std::uint64_t dag_depth = 0;
  for (std::uint64_t v : depth) dag_depth = std::max(dag_depth, v);

  auto checked_pow = [&](std::uint64_t e) -> std::uint64_t {
    unsigned __int128 v = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
      v *= base;
      if (v > kExtractCap) throw std::overflow_error("extraction cap exceeded");
    }
    return static_cast<std::uint64_t>(v);
  };

  std::uint64_t period = 1;
  for (const auto& [scc, witness] : witnesses) {
    unsigned __int128 term =
        static_cast<unsigned __int128>(witness.period) * checked_pow(depth[scc]);
    unsigned __int128 l =
        term / std::gcd<std::uint64_t>(period, static_cast<std::uint64_t>(term)) *
        period;
    if (l > kExtractCap) throw std::overflow_error("extraction cap exceeded");
    period = static_cast<std::uint64_t>(l);
  }
  const std::uint64_t m0 = checked_pow(dag_depth + 1);

  // Membership above m0 is period-periodic; read one full window.
  std::vector<char> tail = zero_tail_acceptance(dfa);
  Word rep;
  auto member = [&](std::uint64_t n) {
    rep.clear();
    std::uint64_t v = n;
    while (v != 0) {
      rep.push_back(static_cast<Digit>(v % base));
      v /= base;
    }
    State q = dfa.initial();
    for (Digit a : rep) q = dfa.next(q, a);
    return tail[q] != 0;
  };

  std::vector<char> window(period);
  for (std::uint64_t x = 0; x < period; ++x) window[x] = member(m0 + x) ? 1 : 0;

  // Canonical period: the least divisor consistent with the window (the
  // true period divides the overapproximation, so wrap-around comparison
  // within one window is sound).
  std::uint64_t canon_p = period;
  for (std::uint64_t dv = 1; dv <= period / 2; ++dv) {
    if (period % dv != 0) continue;
    bool fits = true;
    for (std::uint64_t x = 0; x < period && fits; ++x) {
      fits = window[x] == window[(x + dv) % period];
    }
    if (fits) {
      canon_p = dv;
      break;
    }
  }

  UpSet set;
  set.period = canon_p;
  std::vector<char> rule(canon_p, 0);
  for (std::uint64_t x = 0; x < canon_p; ++x) {
    if (window[x]) {
      std::uint64_t r = (m0 + x) % canon_p;
      if (!rule[r]) {
        rule[r] = 1;
        set.residues.push_back(r);
      }
    }
  }
  std::sort(set.residues.begin(), set.residues.end());

  // Least threshold: walk down from m0 while membership keeps matching the
  // periodic rule.
  std::uint64_t m = m0;
  while (m > 0 && member(m - 1) == (rule[(m - 1) % canon_p] != 0)) --m;
  set.threshold = m;
  return set;
}

namespace {

UpReport run_criterion(const Dfa& dfa) {
  UpReport report;
  auto t0 = Clock::now();
  std::vector<State> up0 = check_up0(dfa);
  report.timings.up0_s = seconds_since(t0);
  if (!up0.empty()) {
    for (State q : up0) {
      report.failures.push_back({UpCondition::Up0,
                                 static_cast<std::uint32_t>(-1), q, 0,
                                 PascalReject::None});
    }
    return report;
  }

  t0 = Clock::now();
  Condensation cond = condense(dfa);
  report.timings.condense_s = seconds_since(t0);

  t0 = Clock::now();
  std::vector<SccClass> classes = classify(dfa, cond);
  report.timings.classify_s = seconds_since(t0);

  t0 = Clock::now();
  std::vector<UpFailure> up12 = check_up1_up2(dfa, cond, classes);
  report.timings.up12_s = seconds_since(t0);
  if (!up12.empty()) {
    report.failures = std::move(up12);
    return report;
  }

  t0 = Clock::now();
  Up3Result up3 = check_up3(dfa, cond, classes);
  report.timings.up3_s = seconds_since(t0);
  report.witnesses = std::move(up3.witnesses);
  if (!up3.failures.empty()) {
    report.failures = std::move(up3.failures);
    return report;
  }

  t0 = Clock::now();
  Up4Result up4 = check_up4(dfa, cond, classes, report.witnesses);
  report.timings.up4_s = seconds_since(t0);
  if (!up4.failures.empty()) {
    report.failures = std::move(up4.failures);
    return report;
  }

  report.verdict = true;
  t0 = Clock::now();
  try {
    report.parameters = extract_parameters(dfa, cond, report.witnesses);
  } catch (const std::overflow_error&) {
    report.parameters_out_of_range = true;
  }
  report.timings.extract_s = seconds_since(t0);
  return report;
}

}  // namespace

UpReport is_up_minimal(const Dfa& dfa) { return run_criterion(dfa); }

UpReport is_up(const Dfa& dfa) {
  auto t0 = Clock::now();
  Dfa minimal = minimize(dfa);
  double minimize_s = seconds_since(t0);
  UpReport report = run_criterion(minimal);
  report.timings.minimize_s = minimize_s;
  return report;
}

std::string render_machine(const UpReport& report) {
  std::ostringstream out;
  out << "verdict=" << (report.verdict ? "UP" : "NOT_UP") << "\n";
  if (report.verdict && report.parameters) {
    const UpSet& p = *report.parameters;
    out << "period=" << p.period << "\n";
    out << "residues=";
    for (std::size_t i = 0; i < p.residues.size(); ++i) {
      if (i) out << ',';
      out << p.residues[i];
    }
    out << "\n";
    out << "threshold=" << p.threshold << "\n";
  }
  if (report.verdict && report.parameters_out_of_range) {
    out << "parameters=out-of-range\n";
  }
  for (const auto& [scc, w] : report.witnesses) {
    out << "pascal-quotient p=" << w.period << " R=";
    for (std::size_t i = 0; i < w.residues.size(); ++i) {
      if (i) out << ',';
      out << w.residues[i];
    }
    out << " s=" << w.s << " t=" << w.t << "\n";
  }
  for (const UpFailure& f : report.failures) {
    out << "fail=" << to_string(f.condition);
    if (f.scc != static_cast<std::uint32_t>(-1)) out << " scc=" << f.scc;
    if (f.state != kNoState) out << " state=" << f.state;
    out << " digit=" << f.digit;
    if (f.reject != PascalReject::None) out << " reason=" << to_string(f.reject);
    out << "\n";
  }
  return out.str();
}

}  // namespace updfa
