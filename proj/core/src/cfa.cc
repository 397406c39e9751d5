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

#include <algorithm>
#include <sstream>

namespace ho2trs {

// Nonterminals live in the variable namespace under names no parser or
// fresh-name supply produces.
Term NonTerminal::term() const {
  switch (kind) {
    case Kind::kStart:
      return Term::var("@S");
    case Kind::kAny:
      return Term::var("@*");
    case Kind::kRule:
      return Term::var("@R:" + std::to_string(rule));
    case Kind::kVar:
      return Term::var("@V:" + std::to_string(rule) + ":" + var);
  }
  return Term();
}

std::optional<NonTerminal> NonTerminal::from_term(const Term& t) {
  if (!t.is_var()) return std::nullopt;
  const std::string& n = t.var_name();
  if (n.empty() || n[0] != '@') return std::nullopt;
  if (n == "@S") return start();
  if (n == "@*") return any();
  if (n.rfind("@R:", 0) == 0) return rule_nt(std::stoi(n.substr(3)));
  if (n.rfind("@V:", 0) == 0) {
    size_t colon = n.find(':', 3);
    return var_nt(n.substr(colon + 1), std::stoi(n.substr(3, colon - 3)));
  }
  return std::nullopt;
}

std::string NonTerminal::str() const {
  switch (kind) {
    case Kind::kStart:
      return "S";
    case Kind::kAny:
      return "*";
    case Kind::kRule:
      return "R_" + std::to_string(rule);
    case Kind::kVar:
      return var + "_" + std::to_string(rule);
  }
  return "?";
}

std::string grammar_term_str(const Term& t) {
  Substitution show;
  for (const std::string& v : vars(t)) {
    if (auto n = NonTerminal::from_term(Term::var(v))) {
      show[v] = Term::var(n->str());
    }
  }
  return to_string(apply_subst(t, show));
}

bool TreeGrammar::add(const NonTerminal& n, const Term& rhs) {
  if (!seen_[n].insert(rhs).second) return false;
  auto& ps = prods_[n];
  if (ps.empty()) order_.push_back(n);
  ps.push_back(rhs);
  ++count_;
  return true;
}

const std::vector<Term>& TreeGrammar::productions(const NonTerminal& n) const {
  static const std::vector<Term> kNone;
  auto it = prods_.find(n);
  return it == prods_.end() ? kNone : it->second;
}

bool TreeGrammar::is_epsilon_free() const {
  for (const auto& [n, ps] : prods_) {
    for (const Term& t : ps) {
      if (NonTerminal::from_term(t)) return false;
    }
  }
  return true;
}

std::string TreeGrammar::str() const {
  std::ostringstream os;
  for (const NonTerminal& n : order_) {
    os << n.str() << " ->";
    bool first = true;
    for (const Term& t : productions(n)) {
      os << (first ? " " : " | ") << grammar_term_str(t);
      first = false;
    }
    os << "\n";
  }
  return os.str();
}

TreeGrammar initial_grammar(const Atrs& a) {
  TreeGrammar g;
  Term any = NonTerminal::any().term();
  std::vector<Term> margs(a.main().arity(), any);
  g.add(NonTerminal::start(), Term::make(a.main(), std::move(margs)));
  for (Fun c : a.data_constructors()) {
    if (a.is_defined(c)) continue;
    g.add(NonTerminal::any(), Term::make(c, std::vector<Term>(c.arity(), any)));
  }
  return g;
}

namespace {

using Binding = std::vector<std::pair<std::string, Term>>;

// Top-down match of a rule lhs against a grammar term. Nonterminals are
// expanded only where the pattern demands structure; pattern variables bind
// the unexpanded grammar term, which keeps every derivation minimal.
void lazy_match(const TreeGrammar& g, const Term& pat, const Term& u,
                std::set<NonTerminal>& chain, std::vector<Binding>& out) {
  if (pat.is_var()) {
    out.push_back({{pat.var_name(), u}});
    return;
  }
  if (auto n = NonTerminal::from_term(u)) {
    if (!chain.insert(*n).second) return;
    for (const Term& t : g.productions(*n)) lazy_match(g, pat, t, chain, out);
    chain.erase(*n);
    return;
  }
  if (u.is_var() || u.fun() != pat.fun()) return;
  std::vector<Binding> acc{{}};
  for (size_t k = 0; k < pat.args().size(); ++k) {
    std::vector<Binding> sub;
    std::set<NonTerminal> fresh_chain;
    lazy_match(g, pat.arg(k), u.arg(k), fresh_chain, sub);
    if (sub.empty()) return;
    std::vector<Binding> next;
    for (const Binding& b : acc) {
      for (const Binding& s : sub) {
        Binding c = b;
        c.insert(c.end(), s.begin(), s.end());
        next.push_back(std::move(c));
      }
    }
    acc = std::move(next);
  }
  for (Binding& b : acc) out.push_back(std::move(b));
}

bool derives_value(const Term& t, const std::set<NonTerminal>& vp,
                   const Atrs& a) {
  if (auto n = NonTerminal::from_term(t)) return vp.count(*n) > 0;
  if (t.is_var() || a.is_defined(t.fun())) return false;
  for (const Term& s : t.args()) {
    if (!derives_value(s, vp, a)) return false;
  }
  return true;
}

// Nonterminals that derive at least one term free of defined symbols. `*`
// stands for the inputs, which are values even when no constructor is known.
std::set<NonTerminal> value_productive(const TreeGrammar& g, const Atrs& a) {
  std::set<NonTerminal> vp{NonTerminal::any()};
  for (bool changed = true; changed;) {
    changed = false;
    for (const NonTerminal& n : g.nonterminals()) {
      if (vp.count(n)) continue;
      for (const Term& t : g.productions(n)) {
        if (derives_value(t, vp, a)) {
          vp.insert(n);
          changed = true;
          break;
        }
      }
    }
  }
  return vp;
}

Term rule_rhs_nt(const Rule& r) {
  Substitution s;
  for (const std::string& x : vars(r.lhs)) {
    s[x] = NonTerminal::var_nt(x, r.index).term();
  }
  return apply_subst(r.rhs, s);
}

}  // namespace

TreeGrammar build_grammar(const Atrs& a, long fuel) {
  TreeGrammar g = initial_grammar(a);
  std::map<Fun, std::vector<int>> by_root;
  for (const Rule& r : a.rules()) by_root[r.lhs.fun()].push_back(r.index);
  long added = 0;
  auto add = [&](const NonTerminal& n, const Term& t) {
    if (!g.add(n, t)) return false;
    if (++added > fuel) {
      throw GrammarFuelExhausted(
          "grammar construction added more than " + std::to_string(fuel) +
              " productions",
          g);
    }
    return true;
  };
  // Round-based so that the value-productive set, which only grows, is
  // recomputed before each sweep.
  for (bool changed = true; changed;) {
    changed = false;
    std::set<NonTerminal> vp = value_productive(g, a);
    std::vector<std::pair<NonTerminal, Term>> snapshot;
    for (const NonTerminal& n : g.nonterminals()) {
      for (const Term& t : g.productions(n)) snapshot.emplace_back(n, t);
    }
    for (const auto& [n, t] : snapshot) {
      for (const Position& p : fun_positions(t)) {
        const Term& u = subterm_at(t, p);
        if (!a.is_defined(u.fun())) continue;
        auto it = by_root.find(u.fun());
        if (it == by_root.end()) continue;
        for (int i : it->second) {
          const Rule& r = a.rule(i);
          std::vector<Binding> ms;
          std::set<NonTerminal> chain;
          lazy_match(g, r.lhs, u, chain, ms);
          for (const Binding& b : ms) {
            bool normalised = true;
            for (const auto& [x, s] : b) {
              normalised = normalised && derives_value(s, vp, a);
            }
            if (!normalised) continue;
            NonTerminal ri = NonTerminal::rule_nt(i);
            changed |= add(n, replace_at(t, p, ri.term()));
            changed |= add(ri, rule_rhs_nt(r));
            for (const auto& [x, s] : b) {
              changed |= add(NonTerminal::var_nt(x, i), s);
            }
          }
        }
      }
    }
  }
  return g;
}

// Membership.

namespace {

std::vector<NonTerminal> epsilon_closure(const TreeGrammar& g,
                                         const NonTerminal& n) {
  std::vector<NonTerminal> out{n};
  std::set<NonTerminal> seen{n};
  for (size_t k = 0; k < out.size(); ++k) {
    for (const Term& t : g.productions(out[k])) {
      auto m = NonTerminal::from_term(t);
      if (m && seen.insert(*m).second) out.push_back(*m);
    }
  }
  return out;
}

}  // namespace

GrammarOracle::GrammarOracle(const TreeGrammar& g) : g_(&g) {}

bool GrammarOracle::generates(const NonTerminal& n, const Term& t) {
  auto& memo = memo_[n];
  if (auto it = memo.find(t); it != memo.end()) return it->second;
  auto cit = closure_.find(n);
  if (cit == closure_.end()) {
    cit = closure_.emplace(n, epsilon_closure(*g_, n)).first;
  }
  bool result = false;
  for (const NonTerminal& m : cit->second) {
    for (const Term& p : g_->productions(m)) {
      if (NonTerminal::from_term(p)) continue;
      if (generates_term(p, t)) {
        result = true;
        break;
      }
    }
    if (result) break;
  }
  memo_[n][t] = result;
  return result;
}

bool GrammarOracle::generates_term(const Term& p, const Term& t) {
  if (auto n = NonTerminal::from_term(p)) return generates(*n, t);
  if (p.is_var() || t.is_var() || p.fun() != t.fun()) return false;
  for (size_t k = 0; k < p.args().size(); ++k) {
    if (!generates_term(p.arg(k), t.arg(k))) return false;
  }
  return true;
}

bool generates(const TreeGrammar& g, const NonTerminal& n, const Term& t) {
  return GrammarOracle(g).generates(n, t);
}

std::vector<Term> enumerate_language(const TreeGrammar& g,
                                     const NonTerminal& n, int depth,
                                     size_t limit) {
  using Lang = std::map<NonTerminal, std::unordered_set<Term>>;
  Lang prev;  // terms of depth < d
  Lang cur;
  auto expand = [&](const Term& p, const Lang& inner, const Lang& same,
                    auto&& self) -> std::vector<Term> {
    if (auto m = NonTerminal::from_term(p)) {
      auto it = same.find(*m);
      if (it == same.end()) return {};
      return {it->second.begin(), it->second.end()};
    }
    std::vector<std::vector<Term>> acc{{}};
    for (const Term& a : p.args()) {
      std::vector<Term> opts = self(a, inner, inner, self);
      std::vector<std::vector<Term>> next;
      for (const auto& pre : acc) {
        for (const Term& o : opts) {
          auto c = pre;
          c.push_back(o);
          next.push_back(std::move(c));
          if (next.size() > limit) break;
        }
      }
      acc = std::move(next);
      if (acc.empty()) return {};
    }
    std::vector<Term> out;
    for (auto& args : acc) out.push_back(Term::make(p.fun(), std::move(args)));
    return out;
  };
  for (int d = 1; d <= depth; ++d) {
    cur = prev;
    for (bool changed = true; changed;) {
      changed = false;
      for (const NonTerminal& m : g.nonterminals()) {
        for (const Term& p : g.productions(m)) {
          for (Term& t : expand(p, prev, cur, expand)) {
            if (cur[m].size() >= limit) break;
            changed |= cur[m].insert(std::move(t)).second;
          }
        }
      }
    }
    prev = cur;
  }
  std::vector<Term> out(prev[n].begin(), prev[n].end());
  std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) {
    return to_string(x) < to_string(y);
  });
  return out;
}

TreeGrammar eliminate_epsilon(const TreeGrammar& g) {
  TreeGrammar out;
  for (const NonTerminal& n : g.nonterminals()) {
    for (const NonTerminal& m : epsilon_closure(g, n)) {
      for (const Term& t : g.productions(m)) {
        if (!NonTerminal::from_term(t)) out.add(n, t);
      }
    }
  }
  return out;
}

std::set<int> dead_rules(const TreeGrammar& g, const Atrs& a) {
  std::set<int> dead;
  for (const Rule& r : a.rules()) {
    if (!g.has_productions(NonTerminal::rule_nt(r.index))) dead.insert(r.index);
  }
  return dead;
}

// Binders.

namespace {

bool has_defined_outside_nts(const Term& t, const Atrs& a) {
  if (t.is_var()) return false;
  if (a.is_defined(t.fun())) return true;
  for (const Term& s : t.args()) {
    if (has_defined_outside_nts(s, a)) return true;
  }
  return false;
}

Term freshen(const Term& t, const std::string& base, FreshSupply& fresh) {
  if (auto n = NonTerminal::from_term(t)) {
    std::string b = n->kind == NonTerminal::Kind::kVar ? base_name(n->var)
                                                       : base;
    return Term::var(fresh.next(b));
  }
  if (t.is_var()) return t;
  std::vector<Term> args;
  for (const Term& s : t.args()) args.push_back(freshen(s, base, fresh));
  return Term::make(t.fun(), std::move(args));
}

}  // namespace

InstantiationPlan binders(const TreeGrammar& g, const Atrs& a) {
  std::vector<int> live;
  std::vector<Rule> live_rules;
  for (const Rule& r : a.rules()) {
    if (g.has_productions(NonTerminal::rule_nt(r.index))) {
      live.push_back(r.index);
      live_rules.push_back(r);
    }
  }
  Atrs sub = a.with_rules(live_rules);
  Saturation sat = eta_saturate_tracked(sub);
  std::map<int, std::set<std::string>> heads;
  for (const HeadVariableSite& s : head_variable_sites(sat.atrs)) {
    const Rule& er = sat.atrs.rule(s.rule);
    const Term& t = subterm_at(s.in_lhs ? er.lhs : er.rhs, s.pos);
    int i = live[sat.origin[s.rule]];
    if (occurs(t.arg(0).var_name(), a.rule(i).lhs)) {
      heads[i].insert(t.arg(0).var_name());
    }
  }

  InstantiationPlan plan;
  for (int i : live) {
    const Rule& r = a.rule(i);
    std::set<std::string> avoid;
    collect_vars(r.lhs, avoid);
    FreshSupply fresh(avoid);
    std::vector<Substitution> combos{{}};
    bool any = false;
    for (const std::string& x : vars(r.lhs)) {
      const auto& prods = g.productions(NonTerminal::var_nt(x, i));
      bool head = heads[i].count(x) > 0;
      std::vector<Term> bs;
      if (head || prods.size() == 1) {
        for (const Term& t : prods) {
          if (has_defined_outside_nts(t, a)) continue;
          Term b = freshen(t, base_name(x), fresh);
          // Productions that differ only in nonterminals give variant binders.
          bool seen = std::any_of(bs.begin(), bs.end(),
                                  [&](const Term& c) { return is_variant(b, c); });
          if (!seen) bs.push_back(std::move(b));
        }
      }
      if (head && bs.empty()) {
        throw UncoveredHeadVariable("head variable " + x + " of rule " +
                                    r.str() + " has no usable binder");
      }
      if (bs.empty()) continue;
      any = true;
      std::vector<Substitution> next;
      for (const Substitution& s : combos) {
        for (const Term& b : bs) {
          Substitution c = s;
          c[x] = b;
          next.push_back(std::move(c));
        }
      }
      combos = std::move(next);
    }
    if (any) plan[i] = std::move(combos);
  }
  return plan;
}

namespace {

struct Pruned {
  Atrs atrs;
  std::map<int, int> renumber;  // old index -> new index
};

Pruned drop_dead(const Atrs& a, const std::set<int>& dead) {
  std::vector<Rule> kept;
  std::map<int, int> renumber;
  for (const Rule& r : a.rules()) {
    if (dead.count(r.index)) continue;
    renumber[r.index] = static_cast<int>(kept.size());
    kept.push_back(r);
  }
  return {a.with_rules(std::move(kept)), std::move(renumber)};
}

}  // namespace

Atrs cfa_transform(const Atrs& a) {
  TreeGrammar g = build_grammar(a);
  TreeGrammar ge = eliminate_epsilon(g);
  InstantiationPlan plan = binders(ge, a);
  Pruned p = drop_dead(a, dead_rules(g, a));
  InstantiationPlan moved;
  for (auto& [i, subs] : plan) moved[p.renumber.at(i)] = std::move(subs);
  return instantiate(p.atrs, moved);
}

Atrs cfa_dce(const Atrs& a) {
  TreeGrammar g = build_grammar(a);
  std::set<int> dead = dead_rules(g, a);
  if (dead.empty()) return a;
  return drop_dead(a, dead).atrs;
}

}  // namespace ho2trs
