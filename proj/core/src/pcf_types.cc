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

#include <map>

#include "ho2trs/pcf.h"

namespace ho2trs {

namespace {

// Union-find over type terms. One variable per node id and per binder, so
// copies of a top-level definition share their types: no polymorphism.
class Inference {
 public:
  int fresh() {
    nodes_.push_back({Kind::kVar, -1, -1});
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }
  int ground() {
    if (ground_ < 0) {
      ground_ = fresh();
      nodes_[ground_].kind = Kind::kGround;
    }
    return ground_;
  }
  int arrow(int a, int b) {
    int t = fresh();
    nodes_[t] = {Kind::kArrow, a, b};
    return t;
  }

  int var(const std::string& name) {
    auto it = vars_.find(name);
    if (it != vars_.end()) return it->second;
    return vars_[name] = fresh();
  }

  int infer(const ExprPtr& e) {
    auto it = ids_.find(e->id);
    if (it != ids_.end() && e->id != 0) return it->second;
    int t = fresh();
    if (e->id != 0) ids_[e->id] = t;
    switch (e->kind) {
      case ExprKind::kVar:
        unify(t, var(e->name), e->loc);
        break;
      case ExprKind::kCon:
        for (const ExprPtr& k : e->kids) {
          unify(infer(k), ground(), k->loc, "constructor argument");
        }
        unify(t, ground(), e->loc);
        break;
      case ExprKind::kLam:
        unify(t, arrow(var(e->name), infer(e->body())), e->loc);
        break;
      case ExprKind::kApp: {
        int f = infer(e->kids[0]);
        int a = infer(e->kids[1]);
        unify(f, arrow(a, t), e->loc, "application");
        break;
      }
      case ExprKind::kFix:
        unify(var(e->name), t, e->loc);
        unify(infer(e->body()), t, e->loc, "recursive definition");
        break;
      case ExprKind::kMatch:
        unify(infer(e->kids[0]), ground(), e->kids[0]->loc,
              "match scrutinee");
        for (const Case& c : e->cases) {
          for (const std::string& v : c.vars) unify(var(v), ground(), e->loc);
          unify(infer(c.body), t, c.body->loc, "match case");
        }
        break;
    }
    return t;
  }

  void unify(int a, int b, SourceLoc loc, const std::string& what = {}) {
    if (!unify_rec(a, b)) {
      std::string msg = "cannot unify " + show(a) + " with " + show(b);
      if (!what.empty()) msg += " in " + what;
      throw TypeError(loc, msg);
    }
  }

  TypePtr resolve(int t) {
    t = find(t);
    const Node& n = nodes_[t];
    if (n.kind == Kind::kArrow) {
      return SimpleType::arrow(resolve(n.from), resolve(n.to));
    }
    return SimpleType::ground();
  }

  const std::map<int, int>& ids() const { return ids_; }
  const std::map<std::string, int>& vars() const { return vars_; }

 private:
  enum class Kind { kVar, kGround, kArrow };
  struct Node {
    Kind kind;
    int from;
    int to;
  };

  int find(int t) {
    while (parent_[t] != t) {
      parent_[t] = parent_[parent_[t]];
      t = parent_[t];
    }
    return t;
  }

  bool occurs(int v, int t) {
    t = find(t);
    if (t == v) return true;
    const Node& n = nodes_[t];
    return n.kind == Kind::kArrow && (occurs(v, n.from) || occurs(v, n.to));
  }

  bool unify_rec(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return true;
    Node na = nodes_[a], nb = nodes_[b];
    if (na.kind == Kind::kVar) {
      if (occurs(a, b)) return false;
      parent_[a] = b;
      return true;
    }
    if (nb.kind == Kind::kVar) return unify_rec(b, a);
    if (na.kind != nb.kind) return false;
    if (na.kind == Kind::kGround) return true;
    parent_[a] = b;
    return unify_rec(na.from, nb.from) && unify_rec(na.to, nb.to);
  }

  std::string show(int t, int depth = 0) {
    t = find(t);
    const Node& n = nodes_[t];
    if (depth > 8) return "...";
    switch (n.kind) {
      case Kind::kGround:
        return "Ground";
      case Kind::kVar:
        return "'t" + std::to_string(t);
      case Kind::kArrow: {
        std::string l = show(n.from, depth + 1);
        if (nodes_[find(n.from)].kind == Kind::kArrow) l = "(" + l + ")";
        return l + " -> " + show(n.to, depth + 1);
      }
    }
    return "?";
  }

  std::vector<Node> nodes_;
  std::vector<int> parent_;
  int ground_ = -1;
  std::map<int, int> ids_;
  std::map<std::string, int> vars_;
};

}  // namespace

TypedProgram infer_types(const Program& p) {
  Inference inf;
  for (const std::string& v : p.params) {
    inf.unify(inf.var(v), inf.ground(), p.body->loc, "parameter of main");
  }
  for (const auto& [name, e] : p.lets) inf.infer(e);
  int body = inf.infer(p.body);
  inf.unify(body, inf.ground(), p.body->loc,
            "result of main (main must have first-order type)");

  TypedProgram out;
  out.program = p;
  for (const auto& [id, t] : inf.ids()) out.node_types[id] = inf.resolve(t);
  for (const auto& [v, t] : inf.vars()) out.var_types[v] = inf.resolve(t);
  for (const auto& [name, e] : p.lets) {
    out.let_types[name] = inf.resolve(inf.infer(e));
  }
  return out;
}

}  // namespace ho2trs
