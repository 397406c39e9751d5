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


#include "ho2trs/cfa.h"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ho2trs/rewrite.h"
#include "test_support.h"

namespace ho2trs {
namespace {

using testing::corpus;
using testing::list_input;
using testing::run_corpus;

// Enumeration grows quickly: isort has ~55k terms of depth 3 over all
// nonterminals. Languages that hit the cap are compared only one way.
constexpr int kDepth = 3;
constexpr size_t kCap = 600;

// Input of the cfa stage of the default pipeline.
Atrs cfa_input(const std::string& name) {
  auto p = run_corpus(name);
  size_t k = p.find_stage("cfa");
  EXPECT_GT(k, 0u);
  return p.before(k);
}

int depth(const Term& t) {
  int d = 0;
  for (const Term& s : t.args()) d = std::max(d, depth(s));
  return d + 1;
}

std::set<std::string> rule_strs(const Atrs& a) {
  std::set<std::string> out;
  for (const Rule& r : a.rules()) out.insert(r.str());
  return out;
}

TEST(CfaTest, InitialGrammarCoversTheInputs) {
  Atrs a = cfa_input("rev");
  TreeGrammar g = initial_grammar(a);
  EXPECT_EQ(g.productions(NonTerminal::start()).size(), 1u);
  EXPECT_EQ(g.productions(NonTerminal::any()).size(), 2u);
  EXPECT_EQ(g.str(), "S -> main(*)\n* -> *::* | []\n");
}

TEST(CfaTest, GeneratesAgreesWithEnumeration) {
  std::mt19937_64 rng(21);
  for (const auto& cp : corpus()) {
    Atrs a = cfa_input(cp.name);
    TreeGrammar g = build_grammar(a);
    GrammarOracle oracle(g);
    std::set<Fun> fs;
    for (const NonTerminal& n : g.nonterminals()) {
      auto lang = enumerate_language(g, n, kDepth, kCap);
      std::set<Term> in_lang(lang.begin(), lang.end());
      bool complete = lang.size() < kCap;
      for (const Term& t : lang) {
        EXPECT_TRUE(oracle.generates(n, t)) << n.str() << " " << to_string(t);
        collect_funs(t, fs);
      }
      // Random shallow terms over the same symbols: generated iff enumerated.
      std::vector<Fun> sig(fs.begin(), fs.end());
      if (sig.empty() || !complete) continue;
      for (int i = 0; i < 50; ++i) {
        Term t = testing::random_term(sig, {}, kDepth - 1, rng);
        if (depth(t) > kDepth) continue;
        EXPECT_EQ(oracle.generates(n, t), in_lang.count(t) > 0)
            << cp.name << " " << n.str() << " " << to_string(t);
      }
    }
  }
}

TEST(CfaTest, EpsilonEliminationPreservesLanguages) {
  for (const auto& cp : corpus()) {
    TreeGrammar g = build_grammar(cfa_input(cp.name));
    TreeGrammar e = eliminate_epsilon(g);
    EXPECT_TRUE(e.is_epsilon_free());
    for (const NonTerminal& n : g.nonterminals()) {
      auto a = enumerate_language(g, n, kDepth, kCap);
      auto b = enumerate_language(e, n, kDepth, kCap);
      if (a.size() >= kCap || b.size() >= kCap) continue;
      EXPECT_EQ(std::set<Term>(a.begin(), a.end()), std::set<Term>(b.begin(), b.end()))
          << cp.name << " " << n.str();
    }
  }
}

TEST(CfaTest, DeadRulesOfRev) {
  Atrs a = cfa_input("rev");
  TreeGrammar g = build_grammar(a);
  std::set<std::string> dead;
  for (int i : dead_rules(g, a)) dead.insert(a.rule(i).str());
  EXPECT_EQ(dead, (std::set<std::string>{
                      "rev @ l -> fix[walk] @ l @ []",
                      "walk @ [] -> C2",
                      "walk @ (x::ys) -> C1(fix[walk] @ ys,C3(x))",
                      "comp @ f -> comp1(f)",
                      "comp1(f) @ g -> C1(f,g)",
                  }));
  Atrs live = cfa_dce(a);
  EXPECT_EQ(live.size(), 6u);
  EXPECT_EQ(cfa_dce(live), live);
}

TEST(CfaTest, BindersForTheCompositionRule) {
  Atrs live = cfa_dce(cfa_input("rev"));
  TreeGrammar g = eliminate_epsilon(build_grammar(live));
  InstantiationPlan plan = binders(g, live);
  int c1 = -1;
  for (const Rule& r : live.rules()) {
    if (r.str() == "C1(f,g) @ z -> f @ (g @ z)") c1 = r.index;
  }
  ASSERT_GE(c1, 0);
  ASSERT_TRUE(plan.count(c1));
  std::set<std::string> f_shapes, g_shapes;
  for (const Substitution& s : plan.at(c1)) {
    f_shapes.insert(to_string(s.at("f")));
    g_shapes.insert(to_string(s.at("g")));
  }
  ASSERT_EQ(f_shapes.size(), 2u);
  EXPECT_TRUE(f_shapes.count("C2"));
  // C1(f',C3(x')) up to the names of the fresh variables.
  Term nested = Term::make(Fun::get("C1", 2),
                           {Term::var("a"), Term::make(Fun::get("C3", 1), {Term::var("b")})});
  bool found = false;
  for (const Substitution& s : plan.at(c1)) found = found || is_variant(s.at("f"), nested);
  EXPECT_TRUE(found);
  EXPECT_EQ(g_shapes.size(), 1u);
  EXPECT_EQ(plan.at(c1).size(), 2u);
}

TEST(CfaTest, GrammarIsSafeForReachableSteps) {
  for (const auto& cp : corpus()) {
    Atrs a = cfa_input(cp.name);
    TreeGrammar g = build_grammar(a);
    std::set<int> dead = dead_rules(g, a);
    GrammarOracle oracle(g);
    for (int n = 0; n <= 6; ++n) {
      Trace tr = normalize(a, Term::make(a.main(), {list_input(cp.inputs, n)}));
      for (const Step& s : tr.steps) {
        EXPECT_FALSE(dead.count(s.rule));
        for (const auto& [x, t] : s.sigma) {
          EXPECT_TRUE(oracle.generates(NonTerminal::var_nt(x, s.rule), t))
              << cp.name << " " << x << "_" << s.rule << " " << to_string(t);
        }
      }
    }
  }
}

TEST(CfaTest, FuelBoundsTheConstruction) {
  Atrs a = cfa_input("rev");
  try {
    build_grammar(a, 3);
    FAIL() << "expected fuel exhaustion";
  } catch (const GrammarFuelExhausted& e) {
    EXPECT_GT(e.partial().size(), 0u);
  }
}

TEST(CfaTest, CfaTransformKeepsSemantics) {
  for (const auto& cp : corpus()) {
    Atrs a = cfa_input(cp.name);
    Atrs b = cfa_transform(a);
    EXPECT_TRUE(check_non_ambiguous(b).ok);
    for (int n = 0; n <= 8; ++n) {
      Term t = Term::make(a.main(), {list_input(cp.inputs, n)});
      Count x = count_steps(a, t), y = count_steps(b, t);
      EXPECT_EQ(x.normal_form, y.normal_form) << cp.name;
      EXPECT_EQ(x.length, y.length) << cp.name;
    }
  }
}

TEST(CfaTest, NonTerminalsRoundTripThroughTerms) {
  for (const NonTerminal& n : {NonTerminal::start(), NonTerminal::any(),
                               NonTerminal::rule_nt(3), NonTerminal::var_nt("xs", 2)}) {
    EXPECT_EQ(NonTerminal::from_term(n.term()), n);
  }
  EXPECT_EQ(NonTerminal::var_nt("xs", 2).str(), "xs_2");
  EXPECT_FALSE(NonTerminal::from_term(Term::var("x")));
}

}  // namespace
}  // namespace ho2trs
