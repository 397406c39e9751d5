// Copyright 2026 The ho2trs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any selected criterion fails. `acceptance 3 5` runs only
// criteria 3 and 5.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ho2trs/cfa.h"
#include "ho2trs/errors.h"
#include "ho2trs/rewrite.h"
#include "ho2trs/transforms.h"
#include "ho2trs/trs_io.h"
#include "test_support.h"

#ifndef HO2TRS_GOLDEN_DIR
#error "HO2TRS_GOLDEN_DIR must be defined"
#endif

namespace ho2trs::testing {
namespace {

// Tolerances and sample sizes.
constexpr double kGoldenSeconds = 5.0;
constexpr double kSimulationSeconds = 30.0;
constexpr int kMaxInputSize = 16;
constexpr int kMaxSafetyInputSize = 12;
constexpr int kLinearFrom = 2;
constexpr int kLinearTo = 24;
constexpr int kUncurrySamples = 200;
constexpr int kUncurryMaxInputSize = 8;
constexpr int kPolicyTerms = 50;
constexpr int kRandomTermDepth = 3;
constexpr long kFuel = 1000000;
constexpr uint64_t kSeed = 20261016;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<Term> inputs_for(const CorpusProgram& cp, int n) {
  return {list_input(cp.inputs, n)};
}

Term main_call(const Atrs& a, const std::vector<Term>& in) {
  return Term::make(a.main(), in);
}

std::vector<Pipeline> all_pipelines() {
  std::vector<Pipeline> out;
  for (const CorpusProgram& cp : corpus()) out.push_back(run_corpus(cp.name));
  return out;
}

Outcome golden_pipeline() {
  Outcome o;
  auto t0 = Clock::now();
  Pipeline p = run_corpus("rev");
  double secs = seconds_since(t0);
  Atrs a_rev = parse_trs(read_file(std::string(HO2TRS_GOLDEN_DIR) + "/a_rev.trs"));
  Atrs r_rev = parse_trs(read_file(std::string(HO2TRS_GOLDEN_DIR) + "/r_rev.trs"));
  if (!isomorphism(p.defunc, a_rev)) {
    o.fail("defunctionalized system is not isomorphic to the A_rev listing:\n" +
           p.defunc.str());
  }
  if (!isomorphism(p.final, r_rev)) {
    o.fail("final system (" + std::to_string(p.final.size()) +
           " rules) is not isomorphic to the R_rev listing:\n" + p.final.str());
  }
  if (secs >= kGoldenSeconds) o.fail("took " + std::to_string(secs) + " s");
  if (o.pass) {
    o.detail = std::to_string(p.defunc.size()) + " and " +
               std::to_string(p.final.size()) + " rules, " +
               std::to_string(secs) + " s";
  }
  return o;
}

Outcome stepwise_simulation() {
  Outcome o;
  auto t0 = Clock::now();
  long checks = 0;
  for (const CorpusProgram& cp : corpus()) {
    Pipeline p = run_corpus(cp.name, named_strategy("id"));
    for (int n = 0; n <= kMaxInputSize; ++n) {
      auto in = inputs_for(cp, n);
      EvalResult pe = pcf_eval(p.program, in, kFuel);
      Count c = count_steps(p.defunc, main_call(p.defunc, in), kFuel);
      ++checks;
      if (pe.steps != c.length || pe.value != c.normal_form) {
        o.fail(cp.name + " size " + std::to_string(n) + ": pcf " +
               std::to_string(pe.steps) + " steps, defunc " +
               std::to_string(c.length));
      }
    }
  }
  double secs = seconds_since(t0);
  if (secs >= kSimulationSeconds) o.fail("took " + std::to_string(secs) + " s");
  if (o.pass) o.detail = std::to_string(checks) + " inputs, " + std::to_string(secs) + " s";
  return o;
}

// Step counts of every stage on every input, row per input.
struct StageCounts {
  std::vector<std::vector<Count>> rows;  // [input][stage], stage 0 = defunc
};

StageCounts stage_counts(const Pipeline& p, const CorpusProgram& cp) {
  StageCounts s;
  for (int n = 0; n <= kMaxInputSize; ++n) {
    auto in = inputs_for(cp, n);
    std::vector<Count> row;
    row.push_back(count_steps(p.defunc, main_call(p.defunc, in), kFuel));
    for (const Stage& st : p.stages) {
      row.push_back(count_steps(st.atrs, main_call(st.atrs, in), kFuel));
    }
    s.rows.push_back(std::move(row));
  }
  return s;
}

Outcome stage_semantics() {
  Outcome o;
  long checks = 0;
  for (const CorpusProgram& cp : corpus()) {
    Pipeline p = run_corpus(cp.name);
    StageCounts sc = stage_counts(p, cp);
    for (size_t n = 0; n < sc.rows.size(); ++n) {
      for (size_t k = 1; k < sc.rows[n].size(); ++k) {
        ++checks;
        if (sc.rows[n][k].normal_form != sc.rows[n][k - 1].normal_form) {
          o.fail(cp.name + " size " + std::to_string(n) + ": stage " +
                 p.stages[k - 1].name + " gives " +
                 to_string(sc.rows[n][k].normal_form) + " instead of " +
                 to_string(sc.rows[n][k - 1].normal_form));
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checks) + " stage/input pairs";
  return o;
}

Outcome stage_step_relations() {
  Outcome o;
  long inline_checks = 0, exact_checks = 0;
  for (const CorpusProgram& cp : corpus()) {
    Pipeline p = run_corpus(cp.name);
    StageCounts sc = stage_counts(p, cp);
    for (size_t n = 0; n < sc.rows.size(); ++n) {
      for (size_t k = 1; k < sc.rows[n].size(); ++k) {
        const std::string& name = p.stages[k - 1].name;
        long before = sc.rows[n][k - 1].length;
        long after = sc.rows[n][k].length;
        bool is_inline = name.rfind("inline(", 0) == 0;
        bool ok = is_inline ? before <= 2 * after + 2 : before == after;
        ++(is_inline ? inline_checks : exact_checks);
        if (!ok) {
          o.fail(cp.name + " size " + std::to_string(n) + ": " + name + " " +
                 std::to_string(before) + " -> " + std::to_string(after));
        }
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(inline_checks) + " inline and " +
               std::to_string(exact_checks) + " exact comparisons";
  }
  return o;
}

Outcome rev_linearity() {
  Outcome o;
  Pipeline p = run_corpus("rev");
  std::vector<long> steps;
  for (int n = kLinearFrom; n <= kLinearTo + 1; ++n) {
    Term t = main_call(p.final, {list_input(InputKind::kUnitList, n)});
    steps.push_back(count_steps(p.final, t, kFuel).length);
  }
  std::set<long> diffs;
  for (size_t i = 0; i + 1 < steps.size(); ++i) diffs.insert(steps[i + 1] - steps[i]);
  std::ostringstream ss;
  ss << "differences {";
  for (long d : diffs) ss << (d == *diffs.begin() ? "" : ",") << d;
  ss << "}, steps(" << kLinearFrom << ")=" << steps.front();
  if (diffs.size() != 1) o.fail(ss.str());
  else o.detail = ss.str();
  return o;
}

Outcome grammar_safety() {
  Outcome o;
  long checks = 0;
  for (const CorpusProgram& cp : corpus()) {
    Pipeline p = run_corpus(cp.name);
    size_t k = p.find_stage("cfa");
    if (k == 0) {
      o.fail(cp.name + ": no cfa stage");
      continue;
    }
    const Atrs& a = p.before(k);
    TreeGrammar g = build_grammar(a);
    std::set<int> dead = dead_rules(g, a);
    GrammarOracle oracle(g);
    for (int n = 0; n <= kMaxSafetyInputSize; ++n) {
      Trace tr = normalize(a, main_call(a, inputs_for(cp, n)), kFuel);
      for (const Step& st : tr.steps) {
        ++checks;
        const Rule& r = a.rule(st.rule);
        if (dead.count(st.rule)) o.fail(cp.name + ": dead rule fired: " + r.str());
        for (const std::string& x : vars(r.lhs)) {
          auto it = st.sigma.find(x);
          if (it == st.sigma.end() ||
              !oracle.generates(NonTerminal::var_nt(x, st.rule), it->second)) {
            o.fail(cp.name + ": " + x + "_" + std::to_string(st.rule) +
                   " does not generate its binding in " + r.str());
          }
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checks) + " steps";
  return o;
}

Outcome uncurry_simulation() {
  Outcome o;
  struct Sample {
    const Atrs* uncurried;
    Term before;
    Term after;
  };
  std::vector<Atrs> uncurried;
  std::vector<Sample> pool;
  std::vector<Pipeline> ps = all_pipelines();
  uncurried.reserve(ps.size());
  std::mt19937_64 rng(kSeed);
  for (size_t i = 0; i < ps.size(); ++i) {
    size_t k = ps[i].find_stage("uncurry");
    if (k == 0) {
      o.fail(corpus()[i].name + ": no uncurry stage");
      continue;
    }
    const Atrs& a = ps[i].before(k);
    Atrs eta = eta_saturate(a);
    uncurried.push_back(uncurry(a));  // reserved: pointers stay valid
    for (int n = 0; n <= kUncurryMaxInputSize; ++n) {
      Term t = main_call(eta, inputs_for(corpus()[i], n));
      Trace tr = normalize(eta, t, kFuel, Policy::kRecordAll, rng());
      Term prev = tr.start;
      for (const Step& st : tr.steps) {
        pool.push_back(Sample{&uncurried.back(), prev, st.result});
        prev = st.result;
      }
    }
  }
  std::vector<Sample> picked;
  std::sample(pool.begin(), pool.end(), std::back_inserter(picked),
              kUncurrySamples, rng);
  if (static_cast<int>(picked.size()) < kUncurrySamples) {
    o.fail("only " + std::to_string(pool.size()) + " steps available");
  }
  for (const Sample& s : picked) {
    Term from = uncurry_term(s.before);
    Term to = uncurry_term(s.after);
    // Plain rewrite steps: the image of a CbV step on a partial application
    // can have non-value arguments.
    RuleIndex idx(*s.uncurried);
    std::vector<Redex> redexes;
    for (const Position& pos : positions(from)) {
      if (!subterm_at(from, pos).is_var()) idx.match_root_all(subterm_at(from, pos), pos, redexes);
    }
    bool ok = std::any_of(redexes.begin(), redexes.end(), [&](const Redex& r) {
      return contract(*s.uncurried, from, r) == to;
    });
    if (!ok) o.fail("no step " + to_string(from) + " -> " + to_string(to));
  }
  if (o.pass) {
    o.detail = std::to_string(picked.size()) + " of " +
               std::to_string(pool.size()) + " steps";
  }
  return o;
}

// Instance of a random rule's lhs with random ground terms for its
// variables, so most samples contain a redex.
Term random_redex(const Atrs& a, const std::vector<Fun>& sig,
                  std::mt19937_64& rng) {
  const Rule& r = a.rule(static_cast<int>(rng() % a.size()));
  Substitution s;
  for (const std::string& x : vars(r.lhs)) {
    s[x] = random_term(sig, {}, kRandomTermDepth - 1, rng);
  }
  return apply_subst(r.lhs, s);
}

Outcome policy_independence() {
  Outcome o;
  std::vector<Atrs> systems;
  for (const Pipeline& p : all_pipelines()) {
    systems.push_back(p.defunc);
    systems.push_back(p.final);
  }
  std::mt19937_64 rng(kSeed + 1);
  int done = 0, nontrivial = 0;
  for (int attempt = 0; done < kPolicyTerms && attempt < 100 * kPolicyTerms; ++attempt) {
    const Atrs& a = systems[attempt % systems.size()];
    std::set<Fun> fs = a.funs();
    std::vector<Fun> sig(fs.begin(), fs.end());
    if (!std::any_of(sig.begin(), sig.end(), [](Fun f) { return f.arity() == 0; })) {
      continue;
    }
    Term t = rng() % 2 ? random_redex(a, sig, rng)
                       : random_term(sig, {}, kRandomTermDepth, rng);
    Trace li, ra;
    try {
      li = normalize(a, t, kFuel / 100);
      ra = normalize(a, t, kFuel / 100, Policy::kRecordAll, rng());
    } catch (const FuelExhausted&) {
      continue;
    }
    ++done;
    if (li.length() > 0) ++nontrivial;
    if (li.length() != ra.length() || li.normal_form != ra.normal_form) {
      o.fail(to_string(t) + ": " + std::to_string(li.length()) + " vs " +
             std::to_string(ra.length()) + " steps");
    }
  }
  if (done < kPolicyTerms) o.fail("only " + std::to_string(done) + " terms normalized");
  if (o.pass) {
    o.detail = std::to_string(done) + " terms, " + std::to_string(nontrivial) +
               " with at least one step";
  }
  return o;
}

Outcome non_ambiguity() {
  Outcome o;
  long checks = 0;
  for (const CorpusProgram& cp : corpus()) {
    Pipeline p = run_corpus(cp.name);
    ++checks;
    if (!check_non_ambiguous(p.defunc).ok) o.fail(cp.name + ": defunc");
    for (const Stage& s : p.stages) {
      ++checks;
      if (!check_non_ambiguous(s.atrs).ok) o.fail(cp.name + ": " + s.name);
    }
  }
  if (o.pass) o.detail = std::to_string(checks) + " systems";
  return o;
}

std::vector<std::string> emit_all(const Pipeline& p) {
  std::vector<std::string> out;
  auto add = [&](const Atrs& a) {
    out.push_back(emit(a, OutputFormat::kApplicative));
    if (!a.uses_application()) out.push_back(emit(a, OutputFormat::kClassic));
  };
  add(p.defunc);
  for (const Stage& s : p.stages) add(s.atrs);
  return out;
}

Outcome round_trip() {
  Outcome o;
  long checks = 0;
  for (const CorpusProgram& cp : corpus()) {
    Pipeline p = run_corpus(cp.name);
    std::vector<const Atrs*> systems{&p.defunc};
    for (const Stage& s : p.stages) systems.push_back(&s.atrs);
    for (const Atrs* a : systems) {
      for (OutputFormat f : {OutputFormat::kApplicative, OutputFormat::kClassic}) {
        if (f == OutputFormat::kClassic && a->uses_application()) continue;
        ++checks;
        std::string text = emit(*a, f);
        Atrs back = parse_trs(text);
        bool same = back == *a;
        for (Fun g : a->funs()) same = same && back.is_defined(g) == a->is_defined(g);
        if (!same) o.fail(cp.name + ": " + format_name(f) + " round trip changed\n" + text);
      }
    }
    if (emit_all(p) != emit_all(run_corpus(cp.name))) {
      o.fail(cp.name + ": emitted text differs between runs");
    }
  }
  if (o.pass) o.detail = std::to_string(checks) + " artifacts";
  return o;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> kAll = {
      {1, "golden rev pipeline", golden_pipeline},
      {2, "step-wise simulation", stepwise_simulation},
      {3, "per-stage semantic preservation", stage_semantics},
      {4, "per-stage step relations", stage_step_relations},
      {5, "linear step growth of the final rev system", rev_linearity},
      {6, "grammar safety", grammar_safety},
      {7, "uncurry step simulation", uncurry_simulation},
      {8, "step counts independent of the CbV policy", policy_independence},
      {9, "non-ambiguity on every stage", non_ambiguity},
      {10, "emit/parse round trip and determinism", round_trip},
  };
  return kAll;
}

}  // namespace
}  // namespace ho2trs::testing

int main(int argc, char** argv) {
  using namespace ho2trs::testing;
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  bool all_pass = true;
  for (const Criterion& c : criteria()) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    all_pass = all_pass && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": "
              << c.title;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << std::endl;
  }
  return all_pass ? 0 : 1;
}
