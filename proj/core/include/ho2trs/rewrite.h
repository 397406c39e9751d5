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

// Call-by-value rewriting with step counting.

#ifndef HO2TRS_REWRITE_H_
#define HO2TRS_REWRITE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "ho2trs/atrs.h"
#include "ho2trs/errors.h"
#include "ho2trs/term.h"

namespace ho2trs {

inline constexpr long kDefaultFuel = 1000000;

struct Redex {
  int rule = 0;
  Position pos;
  Substitution sigma;
};

struct Step {
  int rule = 0;
  Position pos;
  Substitution sigma;
  Term result;
};

struct Trace {
  Term start;
  std::vector<Step> steps;
  Term normal_form;
  size_t length() const { return steps.size(); }
};

enum class Policy {
  kLeftmostInnermost,
  // Enumerates every redex at each step and picks one pseudo-randomly.
  kRecordAll,
};

class TraceFuelExhausted : public FuelExhausted {
 public:
  TraceFuelExhausted(const std::string& msg, Trace partial)
      : FuelExhausted(msg), partial_(std::move(partial)) {}
  const Trace& partial() const { return partial_; }

 private:
  Trace partial_;
};

// Indexes rules by the root symbol of their left-hand side.
class RuleIndex {
 public:
  explicit RuleIndex(const Atrs& a);
  // Tries the candidate rules at the root of t, in rule order.
  std::optional<Redex> match_root(const Term& t) const;
  void match_root_all(const Term& t, const Position& pos,
                      std::vector<Redex>& out) const;

 private:
  const std::vector<int>& candidates(const Term& t) const;
  const Atrs* atrs_;
  std::map<Fun, std::vector<int>> by_root_;
  // `@` rules, keyed further by the head of their first argument.
  std::map<Fun, std::vector<int>> app_by_head_;
  std::vector<int> app_var_head_;
  std::vector<int> empty_;
};

// Every CbV redex of t: a subterm rooted at a defined symbol or `@` whose
// arguments are all values, together with a matching rule. Positions come
// in post-order (children left to right, then the node).
std::vector<Redex> cbv_redexes(const Atrs& a, const Term& t);
// The leftmost-innermost CbV redex, if any.
std::optional<Redex> leftmost_innermost(const Atrs& a, const Term& t);
std::optional<Redex> leftmost_innermost(const RuleIndex& idx, const Atrs& a,
                                        const Term& t);

Term contract(const Atrs& a, const Term& t, const Redex& r);

// Reduces t until no CbV redex is left. Throws TraceFuelExhausted after
// `fuel` steps.
Trace normalize(const Atrs& a, const Term& t, long fuel = kDefaultFuel,
                Policy policy = Policy::kLeftmostInnermost,
                uint64_t seed = 0);

// Same as normalize with the default policy, without recording steps.
struct Count {
  Term normal_form;
  long length = 0;
};
Count count_steps(const Atrs& a, const Term& t, long fuel = kDefaultFuel);

struct Overlap {
  int outer = 0;  // rule whose lhs contains the overlapping position
  int inner = 0;
  Position pos;
};

struct AmbiguityReport {
  bool ok = true;
  std::vector<Overlap> overlaps;
};

AmbiguityReport check_non_ambiguous(const Atrs& a);

}  // namespace ho2trs

#endif  // HO2TRS_REWRITE_H_
