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

// Transformation combinators and the default simplification pipeline.

#ifndef HO2TRS_STRATEGY_H_
#define HO2TRS_STRATEGY_H_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ho2trs/atrs.h"

namespace ho2trs {

// A partial function on rule sets. nullopt, or a result equal to the input,
// means "not applicable".
using Transform = std::function<std::optional<Atrs>(const Atrs&)>;

class Strategy {
 public:
  enum class Kind { kPrim, kSeq, kChoice, kExhaustive };

  static Strategy prim(std::string name, Transform fn);
  static Strategy seq(Strategy a, Strategy b);
  static Strategy choice(Strategy a, Strategy b);
  static Strategy exhaustive(Strategy s);

  Kind kind() const;
  const std::string& name() const;  // primitives only
  const Transform& transform() const;
  const Strategy& left() const;
  const Strategy& right() const;  // seq and choice only

  // Concrete syntax accepted by parse_strategy.
  std::string str() const;

 private:
  struct Node;
  explicit Strategy(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Built-in primitives: inline(<predicate>), usableRules, cfa, cfaDCE,
// uncurry, id. Named pipelines: simplify, simpATRS, toTRS, simpTRS.
// Throws UserError for unknown names.
Strategy named_strategy(std::string_view name);

// seq    := choice (';' choice)*
// choice := unary ('<>' unary)*
// unary  := 'exhaustive' unary | atom
// atom   := '(' seq ')' | name | 'inline' '(' predicate ')'
Strategy parse_strategy(std::string_view text);

Strategy simp_atrs_strategy();
Strategy to_trs_strategy();
Strategy simp_trs_strategy();
Strategy simplify_strategy();

// Snapshot after a primitive applied.
struct Stage {
  std::string name;
  Atrs atrs;
};

inline constexpr long kExhaustiveFuel = 500;

struct RunOptions {
  long exhaustive_fuel = kExhaustiveFuel;
  // Run check_non_ambiguous after every applied primitive.
  bool check_non_ambiguity = true;
};

// nullopt if the strategy is not applicable. Throws FuelExhausted when an
// exhaustive block does not settle.
std::optional<Atrs> run_strategy(const Strategy& s, const Atrs& a,
                                 std::vector<Stage>* stages = nullptr,
                                 const RunOptions& opts = {});

// Runs the default pipeline. Returns the input if nothing applies.
Atrs simplify(const Atrs& a, std::vector<Stage>* stages = nullptr,
              const RunOptions& opts = {});

}  // namespace ho2trs

#endif  // HO2TRS_STRATEGY_H_
