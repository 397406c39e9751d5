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

namespace ho2trs {

// Binders are unique program-wide and top-level copies are closed, so no
// renaming is needed; we only stop at binders that shadow the variable.
ExprPtr substitute(const ExprPtr& e, const std::string& x, const ExprPtr& v) {
  switch (e->kind) {
    case ExprKind::kVar:
      return e->name == x ? v : e;
    case ExprKind::kLam:
    case ExprKind::kFix: {
      if (e->name == x) return e;
      ExprPtr b = substitute(e->body(), x, v);
      if (b == e->body()) return e;
      auto c = std::make_shared<Expr>(*e);
      c->kids[0] = b;
      return c;
    }
    case ExprKind::kMatch: {
      auto c = std::make_shared<Expr>(*e);
      bool changed = false;
      c->kids[0] = substitute(e->kids[0], x, v);
      changed = c->kids[0] != e->kids[0];
      for (Case& cs : c->cases) {
        bool shadow = false;
        for (const std::string& y : cs.vars) shadow = shadow || y == x;
        if (shadow) continue;
        ExprPtr b = substitute(cs.body, x, v);
        changed = changed || b != cs.body;
        cs.body = b;
      }
      return changed ? ExprPtr(c) : e;
    }
    default: {
      std::vector<ExprPtr> kids;
      bool changed = false;
      for (const ExprPtr& k : e->kids) {
        kids.push_back(substitute(k, x, v));
        changed = changed || kids.back() != k;
      }
      if (!changed) return e;
      auto c = std::make_shared<Expr>(*e);
      c->kids = std::move(kids);
      return c;
    }
  }
}

namespace {

class Evaluator {
 public:
  explicit Evaluator(long fuel) : fuel_(fuel) {}

  void tick() {
    if (++steps_ > fuel_) {
      throw FuelExhausted("evaluation ran out of fuel after " +
                          std::to_string(fuel_) + " steps");
    }
  }

  ExprPtr eval(const ExprPtr& e) {
    switch (e->kind) {
      case ExprKind::kVar:
        throw StuckTerm("free variable " + e->name + " at " + e->loc.str());
      case ExprKind::kLam:
      case ExprKind::kFix:
        return e;
      case ExprKind::kCon: {
        std::vector<ExprPtr> kids;
        bool changed = false;
        for (const ExprPtr& k : e->kids) {
          kids.push_back(eval(k));
          changed = changed || kids.back() != k;
        }
        if (!changed) return e;
        auto c = std::make_shared<Expr>(*e);
        c->kids = std::move(kids);
        return c;
      }
      case ExprKind::kApp: {
        ExprPtr f = eval(e->kids[0]);
        ExprPtr a = eval(e->kids[1]);
        return apply(f, a);
      }
      case ExprKind::kMatch: {
        ExprPtr s = eval(e->kids[0]);
        if (s->kind != ExprKind::kCon) {
          throw StuckTerm("match on a non-constructor value at " +
                          e->loc.str());
        }
        for (const Case& c : e->cases) {
          if (c.con != s->name) continue;
          tick();
          ExprPtr body = c.body;
          for (size_t i = 0; i < c.vars.size(); ++i) {
            body = substitute(body, c.vars[i], s->kids[i]);
          }
          return eval(body);
        }
        throw StuckTerm("no case for constructor " + s->name + " at " +
                        e->loc.str());
      }
    }
    throw StuckTerm("unknown expression");
  }

  ExprPtr apply(const ExprPtr& f, const ExprPtr& a) {
    if (f->kind == ExprKind::kLam) {
      tick();
      return eval(substitute(f->body(), f->name, a));
    }
    if (f->kind == ExprKind::kFix) {
      tick();
      return apply(eval(substitute(f->body(), f->name, f)), a);
    }
    throw StuckTerm("application of a non-function at " + f->loc.str());
  }

  long steps() const { return steps_; }

 private:
  long fuel_;
  long steps_ = 0;
};

ExprPtr from_data(const Term& t, const Program& p) {
  if (t.is_var()) throw UserError("input is not ground: " + to_string(t));
  const ConDecl* d = p.find_constructor(t.fun().name());
  if (!d || d->arity != t.fun().arity()) {
    throw UserError("input uses " + t.fun().name() + "/" +
                    std::to_string(t.fun().arity()) +
                    ", which is not a constructor of the program");
  }
  std::vector<ExprPtr> kids;
  for (const Term& a : t.args()) kids.push_back(from_data(a, p));
  return make_con(t.fun().name(), std::move(kids));
}

Term to_data(const ExprPtr& e) {
  if (e->kind != ExprKind::kCon) {
    throw StuckTerm("result is not a data value");
  }
  std::vector<Term> args;
  for (const ExprPtr& k : e->kids) args.push_back(to_data(k));
  return Term::make(e->name, std::move(args));
}

}  // namespace

EvalResult pcf_eval(const Program& p, const std::vector<Term>& inputs,
                    long fuel) {
  if (inputs.size() != p.params.size()) {
    throw UserError("main expects " + std::to_string(p.params.size()) +
                    " inputs, got " + std::to_string(inputs.size()));
  }
  Evaluator ev(fuel);
  ev.tick();
  ExprPtr body = p.body;
  for (size_t i = 0; i < inputs.size(); ++i) {
    body = substitute(body, p.params[i], from_data(inputs[i], p));
  }
  ExprPtr v = ev.eval(body);
  return EvalResult{to_data(v), ev.steps()};
}

}  // namespace ho2trs
