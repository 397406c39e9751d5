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

#include <algorithm>
#include <deque>
#include <set>

#include "ho2trs/errors.h"
#include "ho2trs/rewrite.h"

namespace ho2trs {

std::string predicate_name(InliningPredicate p) {
  switch (p) {
    case InliningPredicate::kMatch:
      return "match";
    case InliningPredicate::kLambdaRewrite:
      return "lambda-rewrite";
    case InliningPredicate::kConstructor:
      return "constructor";
    case InliningPredicate::kDecreasing:
      return "decreasing";
  }
  return "?";
}

std::optional<InliningPredicate> parse_predicate(std::string_view name) {
  for (auto p : {InliningPredicate::kMatch, InliningPredicate::kLambdaRewrite,
                 InliningPredicate::kConstructor,
                 InliningPredicate::kDecreasing}) {
    if (predicate_name(p) == name) return p;
  }
  return std::nullopt;
}

// Narrowing and inlining.

std::vector<Unifier> unifying_rules(const Atrs& a, const Rule& r,
                                    const Position& p) {
  const Term& s = subterm_at(r.rhs, p);
  std::vector<Unifier> out;
  if (s.is_var()) return out;
  std::set<std::string> avoid;
  collect_vars(r.lhs, avoid);
  for (const Rule& u : a.rules()) {
    if (u.lhs.fun() != s.fun()) continue;
    FreshSupply fresh(avoid);
    Substitution ren;
    Rule renamed;
    renamed.lhs = fresh.rename(u.lhs, &ren);
    renamed.rhs = apply_subst(u.rhs, ren);
    renamed.index = u.index;
    if (auto mgu = unify(s, renamed.lhs)) {
      out.push_back(Unifier{u.index, std::move(renamed), std::move(*mgu)});
    }
  }
  return out;
}

std::vector<Rule> narrowings(const Atrs& a, const Rule& r, const Position& p) {
  std::vector<Rule> out;
  for (const Unifier& u : unifying_rules(a, r, p)) {
    Term lhs = apply_subst(r.lhs, u.mgu);
    Term rhs = replace_at(apply_subst(r.rhs, u.mgu), p,
                          apply_subst(u.renamed.rhs, u.mgu));
    out.push_back(Rule::make(lhs, rhs));
  }
  return out;
}

bool is_redex_preserving(const Atrs& a, const Rule& r, const Position& p) {
  for (const Unifier& u : unifying_rules(a, r, p)) {
    std::set<std::string> kept;
    collect_vars(u.renamed.rhs, kept);
    for (const std::string& x : vars(u.renamed.lhs)) {
      auto it = u.mgu.find(x);
      if (it == u.mgu.end() || kept.count(x)) continue;
      if (a.has_defined_symbol(it->second)) return false;
    }
  }
  return true;
}

namespace {

// The function a call site invokes: its root, or the head of its spine.
std::optional<Fun> callee(const Term& s) {
  if (s.is_var()) return std::nullopt;
  if (!s.is_app()) return s.fun();
  auto [head, n] = spine(s);
  if (!head.valid()) return std::nullopt;
  return head;
}

long occurrences(const Atrs& a, Fun f) {
  long n = 0;
  for (const Rule& r : a.rules()) {
    for (const Position& p : fun_positions(r.rhs)) {
      if (subterm_at(r.rhs, p).fun() == f) ++n;
    }
  }
  return n;
}

}  // namespace

// Node count of the curried preimage, so that uncurrying does not hide the
// applications a call still has to perform.
size_t applicative_size(const Atrs& a, const Term& t) {
  if (t.is_var()) return 1;
  size_t n = 1;
  if (auto it = a.info().spines.find(t.fun()); it != a.info().spines.end()) {
    n += it->second;
  }
  for (const Term& s : t.args()) n += applicative_size(a, s);
  return n;
}

bool predicate_holds(const Atrs& a, const Rule& r, const Position& p,
                     InliningPredicate pred) {
  const Term& s = subterm_at(r.rhs, p);
  if (s.is_var() || !a.is_defined(s.fun())) return false;
  switch (pred) {
    case InliningPredicate::kMatch:
      return a.closure_kind(s.fun()) == ClosureKind::kMatch;
    case InliningPredicate::kLambdaRewrite:
      return s.is_app() && !s.arg(0).is_var() &&
             a.closure_kind(s.arg(0).fun()) == ClosureKind::kLambda;
    case InliningPredicate::kConstructor: {
      auto us = unifying_rules(a, r, p);
      if (us.empty()) return false;
      for (const Unifier& u : us) {
        if (!a.is_constructor_term(u.renamed.rhs)) return false;
      }
      return true;
    }
    case InliningPredicate::kDecreasing: {
      if (auto f = callee(s); f && *f != a.main() && occurrences(a, *f) == 1) {
        return true;
      }
      auto ns = narrowings(a, r, p);
      if (ns.empty()) return false;
      for (const Rule& n : ns) {
        if (applicative_size(a, n.rhs) >= applicative_size(a, r.rhs)) {
          return false;
        }
      }
      return true;
    }
  }
  return false;
}

std::optional<Atrs> inline_calls(const Atrs& a, InliningPredicate pred) {
  if (!a.info().trusted) return std::nullopt;
  std::vector<Rule> out;
  bool any = false;
  for (const Rule& r : a.rules()) {
    bool done = false;
    for (const Position& p : fun_positions(r.rhs)) {
      if (!predicate_holds(a, r, p, pred)) continue;
      auto ns = narrowings(a, r, p);
      if (ns.empty() || !is_redex_preserving(a, r, p)) continue;
      for (Rule& n : ns) out.push_back(std::move(n));
      done = true;
      break;
    }
    if (!done) out.push_back(r);
    any = any || done;
  }
  if (!any) return std::nullopt;
  return a.with_rules(std::move(out));
}

// Usable rules.

namespace {

Term cap(const Atrs& a, const Term& t, FreshSupply& fresh) {
  if (t.is_var()) return t;
  if (a.is_defined(t.fun())) return fresh.next_var("cap");
  std::vector<Term> args;
  for (const Term& s : t.args()) args.push_back(cap(a, s, fresh));
  return Term::make(t.fun(), std::move(args));
}

}  // namespace

Atrs usable_rules_syntactic(const Atrs& a) {
  const auto& rules = a.rules();
  std::vector<bool> usable(rules.size(), false);
  std::deque<int> work;
  for (const Rule& r : rules) {
    if (r.lhs.fun() == a.main()) {
      usable[r.index] = true;
      work.push_back(r.index);
    }
  }
  while (!work.empty()) {
    const Rule& r = rules[work.front()];
    work.pop_front();
    std::set<std::string> avoid;
    collect_vars(r.rhs, avoid);
    for (const Position& p : fun_positions(r.rhs)) {
      const Term& s = subterm_at(r.rhs, p);
      if (!a.is_defined(s.fun())) continue;
      FreshSupply fresh(avoid);
      std::vector<Term> args;
      for (const Term& t : s.args()) args.push_back(cap(a, t, fresh));
      Term capped = Term::make(s.fun(), std::move(args));
      std::set<std::string> avoid2 = avoid;
      collect_vars(capped, avoid2);
      for (const Rule& u : rules) {
        if (usable[u.index] || u.lhs.fun() != s.fun()) continue;
        FreshSupply f2(avoid2);
        if (unify(capped, f2.rename(u.lhs))) {
          usable[u.index] = true;
          work.push_back(u.index);
        }
      }
    }
  }
  std::vector<Rule> kept;
  for (const Rule& r : rules) {
    if (usable[r.index]) kept.push_back(r);
  }
  return a.with_rules(std::move(kept));
}

// Instantiation.

Atrs instantiate(const Atrs& a, const InstantiationPlan& plan) {
  std::vector<Rule> out;
  for (const Rule& r : a.rules()) {
    auto it = plan.find(r.index);
    if (it == plan.end() || it->second.empty()) {
      out.push_back(r);
      continue;
    }
    std::vector<Rule> mine;
    for (const Substitution& s : it->second) {
      for (const auto& [v, t] : s) {
        if (!occurs(v, r.lhs)) {
          throw InvariantViolation("instantiation binds " + v +
                                   ", which is not a variable of " + r.str());
        }
      }
      Rule inst = Rule::make(apply_subst(r.lhs, s), apply_subst(r.rhs, s));
      Term key = Term::make("->", {inst.lhs, inst.rhs});
      bool dup = std::any_of(mine.begin(), mine.end(), [&](const Rule& m) {
        return is_variant(Term::make("->", {m.lhs, m.rhs}), key);
      });
      if (!dup) mine.push_back(std::move(inst));
    }
    for (Rule& m : mine) out.push_back(std::move(m));
  }
  Atrs result = a.with_rules(std::move(out));
  AmbiguityReport rep = check_non_ambiguous(result);
  if (!rep.ok) {
    const Overlap& o = rep.overlaps.front();
    throw AmbiguityIntroduced("instantiation makes rules " +
                              result.rule(o.outer).str() + " and " +
                              result.rule(o.inner).str() + " overlap");
  }
  return result;
}

// Applicative arity and eta-saturation.

std::pair<Fun, int> spine(const Term& t) {
  int n = 0;
  const Term* cur = &t;
  while (cur->is_app()) {
    ++n;
    cur = &cur->arg(0);
  }
  if (cur->is_var()) return {Fun(), n};
  return {cur->fun(), n};
}

std::map<Fun, int> applicative_arities(const Atrs& a) {
  std::map<Fun, int> out;
  auto scan = [&](const Term& t) {
    for (const Position& p : fun_positions(t)) {
      auto [f, n] = spine(subterm_at(t, p));
      if (!f.valid()) continue;
      int& cur = out[f];
      cur = std::max(cur, n);
    }
  };
  for (const Rule& r : a.rules()) {
    scan(r.lhs);
    scan(r.rhs);
  }
  return out;
}

int applicative_arity(const Atrs& a, Fun f) {
  auto all = applicative_arities(a);
  auto it = all.find(f);
  return it == all.end() ? 0 : it->second;
}

Saturation eta_saturate_tracked(const Atrs& a, long fuel) {
  std::vector<Rule> rules = a.rules();
  std::vector<int> origin;
  for (const Rule& r : rules) origin.push_back(r.index);
  std::vector<bool> extended(rules.size(), false);
  long added = 0;
  for (bool changed = true; changed;) {
    changed = false;
    auto arity = applicative_arities(a.with_rules(rules));
    size_t n = rules.size();
    for (size_t i = 0; i < n; ++i) {
      if (extended[i]) continue;
      auto [f, k] = spine(rules[i].lhs);
      if (!f.valid() || k >= arity[f]) continue;
      if (++added > fuel) {
        throw SaturationDiverged("eta-saturation added more than " +
                                 std::to_string(fuel) + " rules");
      }
      std::set<std::string> avoid;
      collect_vars(rules[i].lhs, avoid);
      Term z = FreshSupply(avoid).next_var("z");
      rules.push_back(Rule::make(Term::apply(rules[i].lhs, z),
                                 Term::apply(rules[i].rhs, z)));
      origin.push_back(origin[i]);
      extended.push_back(false);
      extended[i] = true;
      changed = true;
    }
  }
  return Saturation{a.with_rules(std::move(rules)), std::move(origin)};
}

Atrs eta_saturate(const Atrs& a, long fuel) {
  return eta_saturate_tracked(a, fuel).atrs;
}

// Uncurrying.

std::vector<HeadVariableSite> head_variable_sites(const Atrs& a) {
  std::vector<HeadVariableSite> out;
  for (const Rule& r : a.rules()) {
    for (bool lhs : {true, false}) {
      const Term& t = lhs ? r.lhs : r.rhs;
      for (const Position& p : fun_positions(t)) {
        const Term& s = subterm_at(t, p);
        if (s.is_app() && s.arg(0).is_var()) {
          out.push_back(HeadVariableSite{r.index, lhs, p});
        }
      }
    }
  }
  return out;
}

bool is_head_variable_free(const Atrs& a) {
  return head_variable_sites(a).empty();
}

Fun uncurried_symbol(Fun f, int n) {
  if (n == 0) return f;
  return Fun::get(f.name() + std::string(n, 'u'), f.arity() + n);
}

Term uncurry_term(const Term& t, std::map<Fun, int>* spines) {
  if (t.is_var()) return t;
  if (!t.is_app()) {
    std::vector<Term> args;
    for (const Term& s : t.args()) args.push_back(uncurry_term(s, spines));
    return Term::make(t.fun(), std::move(args));
  }
  std::vector<const Term*> extra;
  const Term* cur = &t;
  while (cur->is_app()) {
    extra.push_back(&cur->arg(1));
    cur = &cur->arg(0);
  }
  if (cur->is_var()) {
    throw HeadVariablePresent("head variable in " + to_string(t));
  }
  std::vector<Term> args;
  for (const Term& s : cur->args()) args.push_back(uncurry_term(s, spines));
  for (size_t k = extra.size(); k-- > 0;) {
    args.push_back(uncurry_term(*extra[k], spines));
  }
  int n = static_cast<int>(extra.size());
  Fun f = uncurried_symbol(cur->fun(), n);
  if (spines && n > 0) (*spines)[f] = n;
  return Term::make(f, std::move(args));
}

Atrs uncurry(const Atrs& a) {
  if (!a.uses_application()) return a;
  Atrs eta = eta_saturate(a);
  auto sites = head_variable_sites(eta);
  if (!sites.empty()) {
    std::string msg = "head variables remain after eta-saturation in:";
    std::set<int> seen;
    for (const HeadVariableSite& s : sites) {
      if (seen.insert(s.rule).second) msg += "\n  " + eta.rule(s.rule).str();
    }
    throw HeadVariablePresent(msg);
  }
  std::set<Fun> old = eta.funs();
  AtrsInfo info = eta.info();
  std::vector<Rule> rules;
  for (const Rule& r : eta.rules()) {
    rules.push_back(Rule::make(uncurry_term(r.lhs, &info.spines),
                               uncurry_term(r.rhs, &info.spines)));
    std::set<Fun> fs;
    collect_funs(rules.back().lhs, fs);
    collect_funs(rules.back().rhs, fs);
    for (Fun f : fs) {
      if (old.count(f)) continue;
      // A fresh f^n collides with nothing and always denotes a call.
      for (Fun g : old) {
        if (g.name() == f.name()) {
          throw InvariantViolation("uncurried symbol " + f.name() +
                                   " clashes with an existing symbol");
        }
      }
      info.defined.insert(f);
    }
  }
  return Atrs(std::move(rules), a.main(), std::move(info));
}

}  // namespace ho2trs
