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

// Control-flow analysis by tree grammars: a regular over-approximation of
// the substitutions and reducts each rule sees in runs from main on data.

#ifndef HO2TRS_CFA_H_
#define HO2TRS_CFA_H_

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ho2trs/atrs.h"
#include "ho2trs/errors.h"
#include "ho2trs/transforms.h"

namespace ho2trs {

struct NonTerminal {
  enum class Kind { kStart, kAny, kRule, kVar };
  Kind kind = Kind::kStart;
  int rule = -1;
  std::string var;

  static NonTerminal start() { return {Kind::kStart, -1, {}}; }
  static NonTerminal any() { return {Kind::kAny, -1, {}}; }
  static NonTerminal rule_nt(int i) { return {Kind::kRule, i, {}}; }
  static NonTerminal var_nt(std::string x, int i) {
    return {Kind::kVar, i, std::move(x)};
  }

  // Grammar right-hand sides are terms in which nonterminals appear as
  // variables with reserved names.
  Term term() const;
  static std::optional<NonTerminal> from_term(const Term& t);

  // S, *, R_3, xs_3
  std::string str() const;

  auto operator<=>(const NonTerminal&) const = default;
  bool operator==(const NonTerminal&) const = default;
};

class TreeGrammar {
 public:
  // False if the production was already present.
  bool add(const NonTerminal& n, const Term& rhs);
  const std::vector<Term>& productions(const NonTerminal& n) const;
  bool has_productions(const NonTerminal& n) const {
    return !productions(n).empty();
  }
  // In order of first production.
  const std::vector<NonTerminal>& nonterminals() const { return order_; }
  size_t size() const { return count_; }
  bool is_epsilon_free() const;

  // One line per nonterminal: N -> t1 | t2
  std::string str() const;

 private:
  std::map<NonTerminal, std::vector<Term>> prods_;
  std::map<NonTerminal, std::unordered_set<Term>> seen_;
  std::vector<NonTerminal> order_;
  size_t count_ = 0;
};

// Prints a grammar term, showing nonterminals by name.
std::string grammar_term_str(const Term& t);

class GrammarFuelExhausted : public FuelExhausted {
 public:
  GrammarFuelExhausted(const std::string& msg, TreeGrammar partial)
      : FuelExhausted(msg), partial_(std::move(partial)) {}
  const TreeGrammar& partial() const { return partial_; }

 private:
  TreeGrammar partial_;
};

inline constexpr long kGrammarFuel = 100000;

// S -> main(*,...,*) and * -> c(*,...,*) for each data constructor.
TreeGrammar initial_grammar(const Atrs& a);
// Closes the initial grammar under call-by-value rewriting with a. Fuel
// bounds the number of productions added.
TreeGrammar build_grammar(const Atrs& a, long fuel = kGrammarFuel);

// Decides n =>* t for ground t. Memoizes across queries, so reuse one
// instance for many queries against the same grammar.
class GrammarOracle {
 public:
  explicit GrammarOracle(const TreeGrammar& g);
  bool generates(const NonTerminal& n, const Term& t);

 private:
  bool generates_term(const Term& p, const Term& t);

  const TreeGrammar* g_;
  std::map<NonTerminal, std::vector<NonTerminal>> closure_;
  std::map<NonTerminal, std::unordered_map<Term, bool>> memo_;
};

bool generates(const TreeGrammar& g, const NonTerminal& n, const Term& t);

// Every ground term derivable from n whose depth is at most `depth`
// (constants have depth 1). Stops after `limit` terms.
std::vector<Term> enumerate_language(const TreeGrammar& g,
                                     const NonTerminal& n, int depth,
                                     size_t limit = 100000);

// Replaces chains N -> M -> ... -> t by N -> t. Languages are unchanged.
TreeGrammar eliminate_epsilon(const TreeGrammar& g);

// Rules i without an R_i production.
std::set<int> dead_rules(const TreeGrammar& g, const Atrs& a);

// Substitutions to instantiate each rule with. `g` must be epsilon-free and
// built for `a`. Throws UncoveredHeadVariable when a head variable has no
// usable binder.
InstantiationPlan binders(const TreeGrammar& g, const Atrs& a);

// Dead-code elimination followed by head-variable instantiation.
Atrs cfa_transform(const Atrs& a);
// Dead-code elimination only.
Atrs cfa_dce(const Atrs& a);

}  // namespace ho2trs

#endif  // HO2TRS_CFA_H_
