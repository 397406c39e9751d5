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

#include "ho2trs/atrs.h"

#include <sstream>

#include "ho2trs/errors.h"

namespace ho2trs {

Rule Rule::make(Term lhs, Term rhs) {
  if (lhs.is_var()) {
    throw InvariantViolation("left-hand side is a variable: " +
                             to_string(lhs));
  }
  std::set<std::string> lv;
  collect_vars(lhs, lv);
  for (const std::string& v : vars(rhs)) {
    if (!lv.count(v)) {
      throw InvariantViolation("variable " + v +
                               " of the right-hand side is not bound in " +
                               to_string(lhs) + " -> " + to_string(rhs));
    }
  }
  Rule r;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  return r;
}

Rule canonical_rule(const Rule& r, const std::set<std::string>& avoid) {
  std::set<std::string> used = avoid;
  Substitution ren;
  bool changed = false;
  auto assign = [&](const std::string& v) {
    if (ren.count(v)) return;
    std::string name = base_name(v);
    if (name.empty()) name = "v";
    while (used.count(name)) name += "'";
    used.insert(name);
    changed = changed || name != v;
    ren[v] = Term::var(name);
  };
  for (const std::string& v : vars(r.lhs)) assign(v);
  for (const std::string& v : vars(r.rhs)) assign(v);
  if (!changed) return r;
  Rule out;
  out.lhs = apply_subst(r.lhs, ren);
  out.rhs = apply_subst(r.rhs, ren);
  out.index = r.index;
  return out;
}

Atrs::Atrs(std::vector<Rule> rules, Fun main, AtrsInfo info)
    : main_(main), info_(std::move(info)) {
  defined_ = info_.defined;
  for (const Rule& r : rules) {
    if (r.lhs.is_var()) {
      throw InvariantViolation("left-hand side is a variable");
    }
    if (!r.lhs.fun().is_app()) defined_.insert(r.lhs.fun());
  }
  if (main_.valid()) defined_.insert(main_);
  info_.defined = defined_;

  std::set<std::string> avoid;
  for (const Rule& r : rules) {
    std::set<Fun> fs;
    collect_funs(r.lhs, fs);
    collect_funs(r.rhs, fs);
    for (Fun f : fs) avoid.insert(f.name());
  }
  rules_.reserve(rules.size());
  for (size_t i = 0; i < rules.size(); ++i) {
    rules_.push_back(canonical_rule(rules[i], avoid));
    rules_.back().index = static_cast<int>(i);
  }
}

Atrs Atrs::with_rules(std::vector<Rule> rules) const {
  return Atrs(std::move(rules), main_, info_);
}

Atrs Atrs::with_info(AtrsInfo info) const {
  return Atrs(rules_, main_, std::move(info));
}

bool Atrs::is_value(const Term& t) const {
  if (t.is_var()) return false;
  if (is_defined(t.fun())) return false;
  for (const Term& a : t.args()) {
    if (!is_value(a)) return false;
  }
  return true;
}

bool Atrs::is_constructor_term(const Term& t) const {
  if (t.is_var()) return true;
  if (is_defined(t.fun())) return false;
  for (const Term& a : t.args()) {
    if (!is_constructor_term(a)) return false;
  }
  return true;
}

bool Atrs::uses_application() const {
  auto is_app = [](Fun f) { return f.is_app(); };
  for (const Rule& r : rules_) {
    if (contains_fun(r.lhs, is_app) || contains_fun(r.rhs, is_app)) {
      return true;
    }
  }
  return false;
}

ClosureKind Atrs::closure_kind(Fun f) const {
  auto it = info_.closures.find(f);
  return it == info_.closures.end() ? ClosureKind::kNone : it->second;
}

std::set<Fun> Atrs::funs() const {
  std::set<Fun> out;
  for (const Rule& r : rules_) {
    collect_funs(r.lhs, out);
    collect_funs(r.rhs, out);
  }
  if (main_.valid()) out.insert(main_);
  for (Fun f : info_.data) out.insert(f);
  return out;
}

std::set<Fun> Atrs::data_constructors() const {
  if (!info_.data.empty()) return info_.data;
  std::set<Fun> out;
  for (Fun f : funs()) {
    if (is_constructor(f)) out.insert(f);
  }
  return out;
}

std::vector<Symbol> Atrs::signature() const {
  std::vector<Symbol> out;
  for (Fun f : funs()) {
    SymbolKind k = f.is_app()       ? SymbolKind::kApplication
                   : is_defined(f) ? SymbolKind::kDefined
                                   : SymbolKind::kConstructor;
    out.push_back(Symbol{f.name(), f.arity(), k});
  }
  return out;
}

std::string Atrs::str() const {
  std::ostringstream os;
  for (const Rule& r : rules_) os << r.str() << "\n";
  return os.str();
}

}  // namespace ho2trs
