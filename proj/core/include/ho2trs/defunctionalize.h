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

// Translation of PCF programs into applicative rewrite systems.

#ifndef HO2TRS_DEFUNCTIONALIZE_H_
#define HO2TRS_DEFUNCTIONALIZE_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ho2trs/atrs.h"
#include "ho2trs/pcf.h"

namespace ho2trs {

struct ClosureConstructor {
  Fun symbol;
  ClosureKind kind = ClosureKind::kNone;
  ExprPtr origin;
  // Ordered free variables stored in the closure (for match: after the
  // scrutinee).
  std::vector<std::string> fv;
};

// Assigns one symbol per distinct abstraction. Two nodes denote the same
// abstraction iff they print identically including node ids, so copies of a
// top-level definition share a symbol while fix-unrolled bodies get their
// own.
class ClosureTable {
 public:
  ClosureTable() = default;
  // Names that closure symbols must not take (constructors, main).
  explicit ClosureTable(std::set<std::string> reserved)
      : taken_(std::move(reserved)) {}

  // e must be a Lam, Fix or Match node.
  const ClosureConstructor& get(const ExprPtr& e);
  const std::vector<ClosureConstructor>& all() const { return closures_; }

 private:
  std::map<std::string, size_t> by_key_;
  std::vector<ClosureConstructor> closures_;
  std::set<std::string> taken_;
};

Term translate_expr(const ExprPtr& e, ClosureTable& table);
std::vector<Rule> defining_rules(const ClosureConstructor& cc,
                                 ClosureTable& table);
// Main rule first, then defining rules in order of first occurrence.
Atrs defunctionalize(const Program& p);

}  // namespace ho2trs

#endif  // HO2TRS_DEFUNCTIONALIZE_H_
