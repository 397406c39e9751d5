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

#include "ho2trs/defunctionalize.h"

#include <algorithm>
#include <deque>
#include <sstream>

namespace ho2trs {

namespace {

void key(const ExprPtr& e, std::ostream& os) {
  os << static_cast<int>(e->kind) << ':' << e->id << ':' << e->name;
  if (e->kind == ExprKind::kMatch) {
    os << '{';
    key(e->kids[0], os);
    for (const Case& c : e->cases) {
      os << '|' << c.con;
      for (const std::string& v : c.vars) os << ',' << v;
      os << "->";
      key(c.body, os);
    }
    os << '}';
    return;
  }
  if (!e->kids.empty()) {
    os << '(';
    for (const ExprPtr& k : e->kids) {
      key(k, os);
      os << ' ';
    }
    os << ')';
  }
}

std::vector<std::string> match_fv(const ExprPtr& m) {
  // FV of the case table, without the scrutinee.
  std::set<std::string> all;
  for (const Case& c : m->cases) {
    ExprPtr body = c.body;
    for (const std::string& v : free_vars(body)) {
      if (std::find(c.vars.begin(), c.vars.end(), v) == c.vars.end()) {
        all.insert(v);
      }
    }
  }
  std::vector<std::string> out(all.begin(), all.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const std::string& a, const std::string& b) {
                     return binder_order(a) < binder_order(b);
                   });
  return out;
}

std::vector<Term> as_vars(const std::vector<std::string>& vs) {
  std::vector<Term> out;
  for (const std::string& v : vs) out.push_back(Term::var(v));
  return out;
}

}  // namespace

const ClosureConstructor& ClosureTable::get(const ExprPtr& e) {
  std::ostringstream os;
  key(e, os);
  std::string k = os.str();
  auto it = by_key_.find(k);
  if (it != by_key_.end()) return closures_[it->second];

  ClosureConstructor cc;
  cc.origin = e;
  std::string base;
  int extra = 0;
  switch (e->kind) {
    case ExprKind::kLam:
      cc.kind = ClosureKind::kLambda;
      cc.fv = free_vars(e);
      base = e->hint.empty() ? "lam" : e->hint;
      break;
    case ExprKind::kFix:
      cc.kind = ClosureKind::kFix;
      cc.fv = free_vars(e);
      base = "fix[" + (e->hint.empty() ? base_name(e->name) : e->hint) + "]";
      break;
    case ExprKind::kMatch:
      cc.kind = ClosureKind::kMatch;
      cc.fv = match_fv(e);
      base = e->hint.empty() ? "match" : e->hint;
      extra = 1;
      break;
    default:
      throw InvariantViolation("not an abstraction: " + print_expr(e));
  }
  std::string name = base;
  for (int n = 2; taken_.count(name); ++n) name = base + "_" + std::to_string(n);
  taken_.insert(name);
  cc.symbol = Fun::get(name, static_cast<int>(cc.fv.size()) + extra);
  by_key_[k] = closures_.size();
  closures_.push_back(std::move(cc));
  return closures_.back();
}

Term translate_expr(const ExprPtr& e, ClosureTable& table) {
  switch (e->kind) {
    case ExprKind::kVar:
      return Term::var(e->name);
    case ExprKind::kCon: {
      std::vector<Term> args;
      for (const ExprPtr& k : e->kids) args.push_back(translate_expr(k, table));
      return Term::make(e->name, std::move(args));
    }
    case ExprKind::kApp:
      return Term::apply(translate_expr(e->kids[0], table),
                         translate_expr(e->kids[1], table));
    case ExprKind::kLam:
    case ExprKind::kFix: {
      const ClosureConstructor& cc = table.get(e);
      return Term::make(cc.symbol, as_vars(cc.fv));
    }
    case ExprKind::kMatch: {
      Fun f = table.get(e).symbol;
      std::vector<std::string> fv = table.get(e).fv;
      std::vector<Term> args{translate_expr(e->kids[0], table)};
      for (const std::string& v : fv) args.push_back(Term::var(v));
      return Term::make(f, std::move(args));
    }
  }
  throw InvariantViolation("unknown expression kind");
}

std::vector<Rule> defining_rules(const ClosureConstructor& cc,
                                 ClosureTable& table) {
  const ExprPtr& e = cc.origin;
  std::vector<Rule> out;
  switch (cc.kind) {
    case ClosureKind::kLambda: {
      Term head = Term::make(cc.symbol, as_vars(cc.fv));
      out.push_back(Rule::make(Term::apply(head, Term::var(e->name)),
                               translate_expr(e->body(), table)));
      break;
    }
    case ClosureKind::kFix: {
      Term head = Term::make(cc.symbol, as_vars(cc.fv));
      ExprPtr unrolled = substitute(e->body(), e->name, e);
      std::string zbase =
          e->body()->kind == ExprKind::kLam ? base_name(e->body()->name) : "z";
      std::set<std::string> avoid(cc.fv.begin(), cc.fv.end());
      Term z = FreshSupply(avoid).next_var(zbase);
      out.push_back(Rule::make(
          Term::apply(head, z),
          Term::apply(translate_expr(unrolled, table), z)));
      break;
    }
    case ClosureKind::kMatch:
      for (const Case& c : e->cases) {
        std::vector<Term> args{Term::make(c.con, as_vars(c.vars))};
        for (const std::string& v : cc.fv) args.push_back(Term::var(v));
        out.push_back(Rule::make(Term::make(cc.symbol, std::move(args)),
                                 translate_expr(c.body, table)));
      }
      break;
    default:
      break;
  }
  return out;
}

Atrs defunctionalize(const Program& p) {
  std::set<std::string> reserved{"main"};
  AtrsInfo info;
  for (const ConDecl& c : p.constructors) {
    reserved.insert(c.name);
    info.data.insert(Fun::get(c.name, c.arity));
  }
  ClosureTable table(reserved);
  std::vector<Rule> rules;
  Fun main = Fun::get("main", static_cast<int>(p.params.size()));
  rules.push_back(Rule::make(Term::make(main, as_vars(p.params)),
                             translate_expr(p.body, table)));

  // Defining rules for every closure symbol in order of discovery. The table
  // only grows, so walking it by index is a breadth-first closure.
  for (size_t i = 0; i < table.all().size(); ++i) {
    ClosureConstructor cc = table.all()[i];
    for (Rule& r : defining_rules(cc, table)) rules.push_back(std::move(r));
  }
  for (const ClosureConstructor& cc : table.all()) {
    info.closures[cc.symbol] = cc.kind;
    if (cc.kind == ClosureKind::kMatch) info.defined.insert(cc.symbol);
  }
  info.trusted = true;
  return Atrs(std::move(rules), main, std::move(info));
}

}  // namespace ho2trs
