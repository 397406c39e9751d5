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

// Rewrite rules and applicative rewrite systems.

#ifndef HO2TRS_ATRS_H_
#define HO2TRS_ATRS_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ho2trs/term.h"

namespace ho2trs {

enum class SymbolKind { kConstructor, kDefined, kApplication };

// Where a closure constructor came from during defunctionalization.
enum class ClosureKind { kNone, kLambda, kFix, kMatch };

struct Symbol {
  std::string name;
  int arity = 0;
  SymbolKind kind = SymbolKind::kConstructor;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

struct Rule {
  Term lhs;
  Term rhs;
  // Position in the owning system; assigned by Atrs.
  int index = 0;

  // Checks that lhs is not a variable and Var(rhs) is a subset of Var(lhs).
  static Rule make(Term lhs, Term rhs);

  std::string str() const { return to_string(lhs) + " -> " + to_string(rhs); }
  friend bool operator==(const Rule& a, const Rule& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

// Renames the variables of r to their base names, adding primes where two
// distinct variables share a base name or a name is in `avoid`. The result
// depends only on the shape of r, so it is stable across runs.
Rule canonical_rule(const Rule& r, const std::set<std::string>& avoid = {});

// Metadata that travels with a rule set through the pipeline.
struct AtrsInfo {
  // Symbols that stay defined even if all their rules are gone.
  std::set<Fun> defined;
  std::map<Fun, ClosureKind> closures;
  // Constructors of the source datatypes: what `main` may be applied to.
  // Empty means "every constructor".
  std::set<Fun> data;
  // Whether every defined symbol is trusted to be sufficiently defined.
  bool trusted = false;
  // f^n made by uncurry -> n, the number of applications it absorbed.
  std::map<Fun, int> spines;
};

class Atrs {
 public:
  Atrs() = default;
  Atrs(std::vector<Rule> rules, Fun main, AtrsInfo info = {});

  const std::vector<Rule>& rules() const { return rules_; }
  const Rule& rule(int i) const { return rules_.at(i); }
  size_t size() const { return rules_.size(); }
  Fun main() const { return main_; }
  const AtrsInfo& info() const { return info_; }

  // A rule set with the same metadata. Roots of the old rules remain defined.
  Atrs with_rules(std::vector<Rule> rules) const;
  Atrs with_info(AtrsInfo info) const;

  bool is_defined(Fun f) const { return f.is_app() || defined_.count(f) > 0; }
  bool is_constructor(Fun f) const { return !is_defined(f); }
  // Ground and built from constructors only.
  bool is_value(const Term& t) const;
  // Built from constructors and variables only.
  bool is_constructor_term(const Term& t) const;
  bool has_defined_symbol(const Term& t) const { return !is_constructor_term(t); }
  bool uses_application() const;

  ClosureKind closure_kind(Fun f) const;
  // Data constructors that inputs of `main` are built from.
  std::set<Fun> data_constructors() const;
  // Every symbol occurring in the rules, plus main and data constructors.
  std::vector<Symbol> signature() const;
  std::set<Fun> funs() const;
  const std::set<Fun>& defined_symbols() const { return defined_; }

  std::string str() const;

  friend bool operator==(const Atrs& a, const Atrs& b) {
    return a.main_ == b.main_ && a.rules_ == b.rules_;
  }

 private:
  std::vector<Rule> rules_;
  Fun main_;
  AtrsInfo info_;
  std::set<Fun> defined_;
};

}  // namespace ho2trs

#endif  // HO2TRS_ATRS_H_
