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

#include "ho2trs/pcf.h"

#include <algorithm>
#include <climits>
#include <set>
#include <sstream>

namespace ho2trs {

namespace {

ExprPtr node(ExprKind k, int id, SourceLoc loc, std::string name,
             std::vector<ExprPtr> kids, std::string hint = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->id = id;
  e->loc = loc;
  e->name = std::move(name);
  e->kids = std::move(kids);
  e->hint = std::move(hint);
  return e;
}

}  // namespace

ExprPtr make_var(std::string name, int id, SourceLoc loc) {
  return node(ExprKind::kVar, id, loc, std::move(name), {});
}

ExprPtr make_con(std::string name, std::vector<ExprPtr> args, int id,
                 SourceLoc loc) {
  return node(ExprKind::kCon, id, loc, std::move(name), std::move(args));
}

ExprPtr make_lam(std::string var, ExprPtr body, int id, std::string hint,
                 SourceLoc loc) {
  return node(ExprKind::kLam, id, loc, std::move(var), {std::move(body)},
              std::move(hint));
}

ExprPtr make_app(ExprPtr fn, ExprPtr arg, int id, SourceLoc loc) {
  return node(ExprKind::kApp, id, loc, {}, {std::move(fn), std::move(arg)});
}

ExprPtr make_fix(std::string var, ExprPtr body, int id, std::string hint,
                 SourceLoc loc) {
  return node(ExprKind::kFix, id, loc, std::move(var), {std::move(body)},
              std::move(hint));
}

ExprPtr make_match(ExprPtr scrutinee, std::vector<Case> cases, int id,
                   std::string hint, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::kMatch;
  e->id = id;
  e->loc = loc;
  e->kids = {std::move(scrutinee)};
  e->cases = std::move(cases);
  e->hint = std::move(hint);
  return e;
}

const ConDecl* Program::find_constructor(std::string_view name) const {
  for (const ConDecl& c : constructors) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

int binder_order(std::string_view var) {
  size_t hash = var.rfind('#');
  if (hash == std::string_view::npos) return INT_MAX;
  int k = 0;
  for (size_t i = hash + 1; i < var.size(); ++i) {
    if (var[i] < '0' || var[i] > '9') return INT_MAX;
    k = k * 10 + (var[i] - '0');
  }
  return k;
}

namespace {

void collect_free(const ExprPtr& e, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  switch (e->kind) {
    case ExprKind::kVar:
      if (!bound.count(e->name)) out.insert(e->name);
      return;
    case ExprKind::kLam:
    case ExprKind::kFix: {
      bool fresh = bound.insert(e->name).second;
      collect_free(e->body(), bound, out);
      if (fresh) bound.erase(e->name);
      return;
    }
    case ExprKind::kMatch:
      collect_free(e->kids[0], bound, out);
      for (const Case& c : e->cases) {
        std::vector<std::string> added;
        for (const std::string& v : c.vars) {
          if (bound.insert(v).second) added.push_back(v);
        }
        collect_free(c.body, bound, out);
        for (const std::string& v : added) bound.erase(v);
      }
      return;
    default:
      for (const ExprPtr& k : e->kids) collect_free(k, bound, out);
  }
}

}  // namespace

std::vector<std::string> free_vars(const ExprPtr& e) {
  std::set<std::string> bound, out;
  collect_free(e, bound, out);
  std::vector<std::string> v(out.begin(), out.end());
  std::stable_sort(v.begin(), v.end(),
                   [](const std::string& a, const std::string& b) {
                     return binder_order(a) < binder_order(b);
                   });
  return v;
}

// Printing.

namespace {

enum class Ctx { kTop, kNested, kConsLeft, kConsRight, kAppFn, kAppArg };

std::string src_name(const std::string& v) {
  std::string b = base_name(v);
  return b.empty() ? "_" : b;
}

void print(const ExprPtr& e, Ctx ctx, std::ostream& os) {
  switch (e->kind) {
    case ExprKind::kVar:
      os << src_name(e->name);
      return;
    case ExprKind::kCon: {
      if (e->name == kCons) {
        bool paren = ctx == Ctx::kConsLeft || ctx == Ctx::kAppFn ||
                     ctx == Ctx::kAppArg;
        if (paren) os << "(";
        print(e->kids[0], Ctx::kConsLeft, os);
        os << " :: ";
        print(e->kids[1], Ctx::kConsRight, os);
        if (paren) os << ")";
        return;
      }
      if (e->kids.empty()) {
        os << e->name;
        return;
      }
      bool paren = ctx == Ctx::kAppFn || ctx == Ctx::kAppArg;
      if (paren) os << "(";
      os << e->name;
      if (e->kids.size() == 1) {
        os << " ";
        print(e->kids[0], Ctx::kAppArg, os);
      } else {
        os << " (";
        for (size_t i = 0; i < e->kids.size(); ++i) {
          if (i) os << ", ";
          print(e->kids[i], Ctx::kNested, os);
        }
        os << ")";
      }
      if (paren) os << ")";
      return;
    }
    case ExprKind::kApp: {
      bool paren = ctx == Ctx::kAppArg;
      if (paren) os << "(";
      print(e->kids[0], Ctx::kAppFn, os);
      os << " ";
      print(e->kids[1], Ctx::kAppArg, os);
      if (paren) os << ")";
      return;
    }
    case ExprKind::kLam:
    case ExprKind::kFix:
    case ExprKind::kMatch:
      break;
  }
  bool paren = ctx != Ctx::kTop;
  if (paren) os << "(";
  if (e->kind == ExprKind::kLam) {
    os << "fun " << src_name(e->name) << " -> ";
    print(e->body(), Ctx::kTop, os);
  } else if (e->kind == ExprKind::kFix) {
    os << "fix " << src_name(e->name) << " -> ";
    print(e->body(), Ctx::kTop, os);
  } else {
    os << "match ";
    print(e->kids[0], Ctx::kNested, os);
    os << " with";
    for (const Case& c : e->cases) {
      os << " | ";
      if (c.con == kCons) {
        os << src_name(c.vars[0]) << " :: " << src_name(c.vars[1]);
      } else {
        os << c.con;
        if (c.vars.size() == 1) {
          os << " " << src_name(c.vars[0]);
        } else if (!c.vars.empty()) {
          os << " (";
          for (size_t i = 0; i < c.vars.size(); ++i) {
            if (i) os << ", ";
            os << src_name(c.vars[i]);
          }
          os << ")";
        }
      }
      os << " -> ";
      print(c.body, Ctx::kNested, os);
    }
  }
  if (paren) os << ")";
}

}  // namespace

std::string print_expr(const ExprPtr& e) {
  std::ostringstream os;
  print(e, Ctx::kTop, os);
  return os.str();
}

std::string print_program(const Program& p) {
  std::ostringstream os;
  std::vector<std::string> types;
  std::map<std::string, std::vector<const ConDecl*>> by_type;
  for (const ConDecl& c : p.constructors) {
    if (c.type == "list" || c.type == "nat") continue;
    if (!by_type.count(c.type)) types.push_back(c.type);
    by_type[c.type].push_back(&c);
  }
  for (const std::string& t : types) {
    os << "type " << t << " =";
    bool first = true;
    for (const ConDecl* c : by_type[t]) {
      os << (first ? " " : " | ") << c->name;
      first = false;
      for (int i = 0; i < c->arity; ++i) os << (i ? " * " : " of ") << t;
    }
    os << " ;;\n";
  }
  os << "let main";
  for (const std::string& v : p.params) os << " " << src_name(v);
  os << " = " << print_expr(p.body) << " ;;\n";
  return os.str();
}

// Alpha equivalence.

namespace {

using Env = std::map<std::string, int>;

bool alpha(const ExprPtr& a, const ExprPtr& b, Env& ea, Env& eb, int& depth) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::kVar: {
      auto ia = ea.find(a->name);
      auto ib = eb.find(b->name);
      if (ia == ea.end() || ib == eb.end()) {
        return ia == ea.end() && ib == eb.end() && a->name == b->name;
      }
      return ia->second == ib->second;
    }
    case ExprKind::kCon:
      if (a->name != b->name || a->kids.size() != b->kids.size()) {
        return false;
      }
      for (size_t i = 0; i < a->kids.size(); ++i) {
        if (!alpha(a->kids[i], b->kids[i], ea, eb, depth)) return false;
      }
      return true;
    case ExprKind::kApp:
      return alpha(a->kids[0], b->kids[0], ea, eb, depth) &&
             alpha(a->kids[1], b->kids[1], ea, eb, depth);
    case ExprKind::kLam:
    case ExprKind::kFix: {
      Env sa = ea, sb = eb;
      ea[a->name] = eb[b->name] = ++depth;
      bool ok = alpha(a->body(), b->body(), ea, eb, depth);
      ea = std::move(sa);
      eb = std::move(sb);
      return ok;
    }
    case ExprKind::kMatch: {
      if (a->cases.size() != b->cases.size()) return false;
      if (!alpha(a->kids[0], b->kids[0], ea, eb, depth)) return false;
      for (size_t i = 0; i < a->cases.size(); ++i) {
        const Case& ca = a->cases[i];
        const Case& cb = b->cases[i];
        if (ca.con != cb.con || ca.vars.size() != cb.vars.size()) return false;
        Env sa = ea, sb = eb;
        for (size_t j = 0; j < ca.vars.size(); ++j) {
          ea[ca.vars[j]] = eb[cb.vars[j]] = ++depth;
        }
        bool ok = alpha(ca.body, cb.body, ea, eb, depth);
        ea = std::move(sa);
        eb = std::move(sb);
        if (!ok) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace

bool alpha_equal(const ExprPtr& a, const ExprPtr& b) {
  Env ea, eb;
  int depth = 0;
  return alpha(a, b, ea, eb, depth);
}

bool alpha_equal(const Program& a, const Program& b) {
  if (a.params.size() != b.params.size()) return false;
  // Built-in constructors are registered on first use, so order differs.
  auto decls = [](const Program& p) {
    std::set<std::pair<std::string, int>> out;
    for (const ConDecl& c : p.constructors) out.insert({c.name, c.arity});
    return out;
  };
  if (decls(a) != decls(b)) return false;
  Env ea, eb;
  int depth = 0;
  for (size_t i = 0; i < a.params.size(); ++i) {
    ea[a.params[i]] = eb[b.params[i]] = ++depth;
  }
  return alpha(a.body, b.body, ea, eb, depth);
}

// Types.

TypePtr SimpleType::ground() {
  static const TypePtr g = std::make_shared<SimpleType>();
  return g;
}

TypePtr SimpleType::arrow(TypePtr a, TypePtr b) {
  auto t = std::make_shared<SimpleType>();
  t->from = std::move(a);
  t->to = std::move(b);
  return t;
}

std::string SimpleType::str() const {
  if (is_ground()) return "Ground";
  std::string l = from->str();
  if (!from->is_ground()) l = "(" + l + ")";
  return l + " -> " + to->str();
}

}  // namespace ho2trs
