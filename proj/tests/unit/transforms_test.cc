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


#include "ho2trs/transforms.h"

#include <gtest/gtest.h>

#include <set>

#include "ho2trs/errors.h"
#include "ho2trs/rewrite.h"
#include "test_support.h"

namespace ho2trs {
namespace {

using testing::corpus;
using testing::list_input;
using testing::run_corpus;

Atrs rev_after(const std::string& strategy) {
  return run_corpus("rev", parse_strategy(strategy)).final;
}

Term v(const std::string& x) { return Term::var(x); }

// One rewrite step of t at p with any rule of a, not only CbV ones.
std::vector<Term> steps_at(const Atrs& a, const Term& t, const Position& p) {
  std::vector<Term> out;
  for (const Rule& r : a.rules()) {
    if (auto s = match(r.lhs, subterm_at(t, p))) {
      out.push_back(replace_at(t, p, apply_subst(r.rhs, *s)));
    }
  }
  return out;
}

TEST(TransformsTest, NarrowingsAreInstancesFollowedByOneStep) {
  Atrs a = rev_after("simpATRS");
  int checked = 0;
  for (const Rule& r : a.rules()) {
    for (const Position& p : fun_positions(r.rhs)) {
      for (const Rule& n : narrowings(a, r, p)) {
        auto sigma = match(r.lhs, n.lhs);
        ASSERT_TRUE(sigma) << n.str() << " is not an instance of " << r.str();
        Term inst = apply_subst(r.rhs, *sigma);
        auto next = steps_at(a, inst, p);
        bool hit = std::any_of(next.begin(), next.end(),
                               [&](const Term& t) { return is_variant(t, n.rhs) || t == n.rhs; });
        EXPECT_TRUE(hit) << n.str() << " from " << r.str() << " at " << position_str(p);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 5);
}

TEST(TransformsTest, ExhaustiveMatchInliningRemovesMatchClosures) {
  auto p = run_corpus("rev", parse_strategy("exhaustive inline(match)"));
  int occurrences = 0;
  for (const Rule& r : p.defunc.rules()) {
    for (const Position& q : fun_positions(r.rhs)) {
      Fun f = subterm_at(r.rhs, q).fun();
      if (p.defunc.closure_kind(f) == ClosureKind::kMatch) ++occurrences;
    }
  }
  EXPECT_LE(static_cast<int>(p.stages.size()), occurrences);
  for (const Rule& r : p.final.rules()) {
    for (const Position& q : fun_positions(r.rhs)) {
      Fun f = subterm_at(r.rhs, q).fun();
      EXPECT_NE(p.final.closure_kind(f), ClosureKind::kMatch) << r.str();
    }
  }
}

TEST(TransformsTest, InliningNeedsTrustedSymbols) {
  Atrs a = run_corpus("rev", named_strategy("id")).defunc;
  AtrsInfo info = a.info();
  info.trusted = false;
  EXPECT_FALSE(inline_calls(a.with_info(info), InliningPredicate::kLambdaRewrite));
  EXPECT_TRUE(inline_calls(a, InliningPredicate::kLambdaRewrite));
}

TEST(TransformsTest, ErasingInlinesAreNotRedexPreserving) {
  // k(x) drops its argument, so inlining k(f(y)) would lose the call f(y).
  Fun mainf = Fun::get("main", 1);
  Term y = v("y");
  std::vector<Rule> rules = {
      Rule::make(Term::make(mainf, {y}),
                 Term::make("k", {Term::make("f", {y})})),
      Rule::make(Term::make("k", {v("x")}), Term::constant("A")),
      Rule::make(Term::make("f", {v("x")}), v("x")),
  };
  Atrs a(rules, mainf);
  EXPECT_FALSE(is_redex_preserving(a, a.rule(0), {}));
  EXPECT_TRUE(is_redex_preserving(a, a.rule(0), {1}));
}

TEST(TransformsTest, UsableRulesKeepEveryFiredRule) {
  for (const auto& cp : corpus()) {
    auto p = run_corpus(cp.name, parse_strategy("simpATRS"));
    const Atrs& before = p.stages.at(p.stages.size() - 2).atrs;
    Atrs usable = usable_rules_syntactic(before);
    std::set<std::string> kept;
    for (const Rule& r : usable.rules()) kept.insert(r.str());
    for (int n = 0; n <= 6; ++n) {
      Term t = Term::make(before.main(), {list_input(cp.inputs, n)});
      for (const Step& s : normalize(before, t).steps) {
        EXPECT_TRUE(kept.count(before.rule(s.rule).str()))
            << cp.name << ": " << before.rule(s.rule).str();
      }
    }
  }
}

TEST(TransformsTest, InstantiationSpecializesTheCompositionRule) {
  Atrs a = rev_after("simpATRS; cfaDCE");
  ASSERT_EQ(a.size(), 6u);
  int c1 = -1;
  for (const Rule& r : a.rules()) {
    if (r.lhs.is_app() && !r.lhs.arg(0).is_var() && r.lhs.arg(0).fun().name() == "C1") c1 = r.index;
  }
  ASSERT_GE(c1, 0);
  Term c2 = Term::constant("C2");
  Term c3 = Term::make(Fun::get("C3", 1), {v("x")});
  Term nested = Term::make(Fun::get("C1", 2), {v("f'"), v("g'")});
  InstantiationPlan plan{{c1, {{{"f", c2}, {"g", c3}}, {{"f", nested}, {"g", c3}}}}};
  Atrs inst = instantiate(a, plan);
  EXPECT_EQ(inst.size(), 7u);
  int c1_rules = 0;
  for (const Rule& r : inst.rules()) {
    if (r.lhs.is_app() && !r.lhs.arg(0).is_var() && r.lhs.arg(0).fun().name() == "C1") {
      ++c1_rules;
      EXPECT_FALSE(r.lhs.arg(0).arg(0).is_var()) << r.str();
    }
  }
  EXPECT_EQ(c1_rules, 2);

  // f -> C2 together with an unconstrained f overlaps.
  InstantiationPlan bad{{c1, {{{"f", c2}}, {{"g", c3}}}}};
  EXPECT_THROW(instantiate(a, bad), AmbiguityIntroduced);
  // Variant instances collapse.
  InstantiationPlan twice{{c1, {{{"f", c2}}, {{"f", c2}}}}};
  EXPECT_EQ(instantiate(a, twice).size(), 6u);
}

// Applicative arity, computed independently from the definition.
std::map<Fun, int> arity_oracle(const Atrs& a) {
  std::map<Fun, int> out;
  for (const Rule& r : a.rules()) {
    for (const Term* side : {&r.lhs, &r.rhs}) {
      for (const Position& p : positions(*side)) {
        const Term* t = &subterm_at(*side, p);
        int n = 0;
        while (!t->is_var() && t->is_app()) {
          t = &t->arg(0);
          ++n;
        }
        if (t->is_var()) continue;
        int& best = out[t->fun()];
        best = std::max(best, n);
      }
    }
  }
  return out;
}

TEST(TransformsTest, ApplicativeAritiesMatchOracle) {
  for (const auto& cp : corpus()) {
    auto p = run_corpus(cp.name);
    std::vector<const Atrs*> systems{&p.defunc};
    for (const Stage& s : p.stages) systems.push_back(&s.atrs);
    for (const Atrs* a : systems) {
      auto want = arity_oracle(*a);
      for (const auto& [f, n] : want) {
        if (f.is_app()) continue;
        EXPECT_EQ(applicative_arity(*a, f), n) << cp.name << " " << f.name();
      }
    }
  }
}

TEST(TransformsTest, EtaSaturationAddsTheFixRules) {
  Atrs a = rev_after("simpATRS; cfaDCE");
  Saturation s = eta_saturate_tracked(a);
  EXPECT_EQ(s.atrs.size(), a.size() + 2);
  ASSERT_EQ(s.origin.size(), s.atrs.size());
  for (size_t i = 0; i < s.atrs.size(); ++i) {
    const Rule& r = s.atrs.rule(static_cast<int>(i));
    const Rule& o = a.rule(s.origin[i]);
    // Each rule extends its origin by trailing applications.
    Term l = r.lhs;
    while (l != o.lhs && l.is_app()) l = l.arg(0);
    EXPECT_TRUE(is_variant(l, o.lhs)) << r.str() << " from " << o.str();
  }
  // Same rewrite relation on reachable terms.
  for (int n = 0; n <= 8; ++n) {
    Term t = Term::make(a.main(), {list_input(testing::InputKind::kUnitList, n)});
    EXPECT_EQ(count_steps(a, t).length, count_steps(s.atrs, t).length);
  }
}

TEST(TransformsTest, UncurryNeedsHeadVariableFreeSystems) {
  Atrs a = rev_after("simpATRS");
  EXPECT_FALSE(is_head_variable_free(eta_saturate(a)));
  EXPECT_THROW(uncurry(a), HeadVariablePresent);

  Atrs inst = rev_after("simpATRS; cfa");
  EXPECT_TRUE(is_head_variable_free(eta_saturate(inst)));
  Atrs u = uncurry(inst);
  EXPECT_FALSE(u.uses_application());
  EXPECT_TRUE(u.is_defined(Fun::get("fix[walk]uu", 2)));
  EXPECT_TRUE(check_non_ambiguous(u).ok);
  EXPECT_EQ(uncurry(u), u);
}

TEST(TransformsTest, UncurriedTermsFlattenSpines) {
  Term t = Term::apply(Term::apply(Term::make(Fun::get("h", 1), {v("x")}), v("y")), v("z"));
  Term u = uncurry_term(t);
  EXPECT_EQ(u.fun(), Fun::get("huu", 3));
  EXPECT_THROW(uncurry_term(Term::apply(v("f"), v("x"))), HeadVariablePresent);
}

TEST(TransformsTest, InliningPredicatesParse) {
  for (auto p : {InliningPredicate::kMatch, InliningPredicate::kLambdaRewrite,
                 InliningPredicate::kConstructor, InliningPredicate::kDecreasing}) {
    EXPECT_EQ(parse_predicate(predicate_name(p)), p);
  }
  EXPECT_FALSE(parse_predicate("bogus"));
}

}  // namespace
}  // namespace ho2trs
