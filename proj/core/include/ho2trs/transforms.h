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

// Complexity-reflecting transformations on applicative rewrite systems.

#ifndef HO2TRS_TRANSFORMS_H_
#define HO2TRS_TRANSFORMS_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ho2trs/atrs.h"

namespace ho2trs {

enum class InliningPredicate { kMatch, kLambdaRewrite, kConstructor, kDecreasing };

std::string predicate_name(InliningPredicate p);
std::optional<InliningPredicate> parse_predicate(std::string_view name);

// Rule index -> substitutions to instantiate that rule with.
using InstantiationPlan = std::map<int, std::vector<Substitution>>;

// A rule of the system, renamed apart from the rule being narrowed, whose
// lhs unifies with the narrowed subterm.
struct Unifier {
  int rule = 0;
  Rule renamed;
  Substitution mgu;
};

std::vector<Unifier> unifying_rules(const Atrs& a, const Rule& r,
                                    const Position& p);
// l mu -> (r mu)[v mu]_p for every rule u -> v whose lhs unifies with r|_p.
// An empty result means no rule applies.
std::vector<Rule> narrowings(const Atrs& a, const Rule& r, const Position& p);
// No variable bound to a potential call is erased by any unifying rule.
bool is_redex_preserving(const Atrs& a, const Rule& r, const Position& p);
bool predicate_holds(const Atrs& a, const Rule& r, const Position& p,
                     InliningPredicate pred);
// Replaces each rule by its narrowings at the leftmost-outermost position
// where the predicate holds and inlining is sound. nullopt if no rule has
// such a position.
std::optional<Atrs> inline_calls(const Atrs& a, InliningPredicate pred);

// Rules reachable from main by the unification-based usable-rules check.
Atrs usable_rules_syntactic(const Atrs& a);

// Replaces rule i by its instances under plan[i]. Rules without an entry,
// or with an empty entry, are kept. Throws AmbiguityIntroduced if the
// result has overlapping left-hand sides.
Atrs instantiate(const Atrs& a, const InstantiationPlan& plan);

// Longest n such that f(...) @ t1 @ ... @ tn occurs in some rule.
int applicative_arity(const Atrs& a, Fun f);
std::map<Fun, int> applicative_arities(const Atrs& a);
// Head symbol and number of trailing applications of t. The head is invalid
// when t is a variable or its spine ends in a variable.
std::pair<Fun, int> spine(const Term& t);

struct Saturation {
  Atrs atrs;
  // For each rule, the index of the rule of the input it extends.
  std::vector<int> origin;
};

inline constexpr long kEtaFuel = 1000;

Saturation eta_saturate_tracked(const Atrs& a, long fuel = kEtaFuel);
Atrs eta_saturate(const Atrs& a, long fuel = kEtaFuel);

struct HeadVariableSite {
  int rule = 0;
  bool in_lhs = false;
  Position pos;
};

std::vector<HeadVariableSite> head_variable_sites(const Atrs& a);
bool is_head_variable_free(const Atrs& a);

// f^n: the symbol standing for f(...) applied to n further arguments.
Fun uncurried_symbol(Fun f, int n);
// Records n for every f^n with n > 0 in *spines when given.
Term uncurry_term(const Term& t, std::map<Fun, int>* spines = nullptr);
// eta-saturates, then flattens every applicative spine. Throws
// HeadVariablePresent if the saturated system has head variables.
Atrs uncurry(const Atrs& a);

}  // namespace ho2trs

#endif  // HO2TRS_TRANSFORMS_H_
