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

#include "ho2trs/term.h"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>
#include <utility>

#include "ho2trs/errors.h"

namespace ho2trs {

struct Fun::Info {
  std::string name;
  int arity;
};

namespace {

std::mutex& intern_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::pair<std::string, int>, std::unique_ptr<Fun::Info>>&
intern_table() {
  static auto* table =
      new std::map<std::pair<std::string, int>, std::unique_ptr<Fun::Info>>();
  return *table;
}

size_t mix(size_t h, size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Fun Fun::get(std::string_view name, int arity) {
  std::lock_guard<std::mutex> lock(intern_mutex());
  auto& table = intern_table();
  auto key = std::make_pair(std::string(name), arity);
  auto it = table.find(key);
  if (it == table.end()) {
    it = table.emplace(key, std::make_unique<Info>(Info{key.first, arity}))
             .first;
  }
  return Fun(it->second.get());
}

Fun Fun::app() {
  static const Fun a = get("@", 2);
  return a;
}

const std::string& Fun::name() const { return info_->name; }
int Fun::arity() const { return info_->arity; }

std::strong_ordering operator<=>(Fun a, Fun b) {
  if (a.info_ == b.info_) return std::strong_ordering::equal;
  if (!a.info_) return std::strong_ordering::less;
  if (!b.info_) return std::strong_ordering::greater;
  if (auto c = a.info_->name <=> b.info_->name; c != 0) return c;
  return a.info_->arity <=> b.info_->arity;
}

struct Term::Node {
  bool is_var = false;
  std::string var;
  Fun fun;
  std::vector<Term> args;
  size_t hash = 0;
  size_t size = 1;
  size_t depth = 1;
  bool ground = true;
};

Term Term::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->is_var = true;
  n->hash = mix(0x51ed27, std::hash<std::string>()(name));
  n->var = std::move(name);
  n->ground = false;
  return Term(std::move(n));
}

Term Term::make(Fun f, std::vector<Term> args) {
  if (static_cast<int>(args.size()) != f.arity()) {
    throw InvariantViolation("symbol " + f.name() + " expects " +
                             std::to_string(f.arity()) + " arguments, got " +
                             std::to_string(args.size()));
  }
  auto n = std::make_shared<Node>();
  n->fun = f;
  size_t h = mix(0x7a11, std::hash<std::string>()(f.name()));
  for (const Term& a : args) {
    h = mix(h, a.hash());
    n->size += a.size();
    n->depth = std::max(n->depth, a.depth() + 1);
    n->ground = n->ground && a.ground();
  }
  n->hash = h;
  n->args = std::move(args);
  return Term(std::move(n));
}

Term Term::make(std::string_view name, std::vector<Term> args) {
  Fun f = Fun::get(name, static_cast<int>(args.size()));
  return make(f, std::move(args));
}

Term Term::apply(Term fn, Term arg) {
  return make(Fun::app(), {std::move(fn), std::move(arg)});
}

bool Term::is_var() const { return node_->is_var; }
const std::string& Term::var_name() const { return node_->var; }
Fun Term::fun() const { return node_->fun; }
const std::vector<Term>& Term::args() const { return node_->args; }
size_t Term::hash() const { return node_ ? node_->hash : 0; }
size_t Term::size() const { return node_->size; }
size_t Term::depth() const { return node_->depth; }
bool Term::ground() const { return node_->ground; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.node_->hash != b.node_->hash || a.node_->size != b.node_->size) {
    return false;
  }
  if (a.is_var() != b.is_var()) return false;
  if (a.is_var()) return a.var_name() == b.var_name();
  if (a.fun() != b.fun()) return false;
  for (size_t i = 0; i < a.args().size(); ++i) {
    if (!(a.args()[i] == b.args()[i])) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (!a.node_) return std::strong_ordering::less;
  if (!b.node_) return std::strong_ordering::greater;
  if (a.is_var() != b.is_var()) {
    return a.is_var() ? std::strong_ordering::less
                      : std::strong_ordering::greater;
  }
  if (a.is_var()) return a.var_name() <=> b.var_name();
  if (auto c = a.fun() <=> b.fun(); c != 0) return c;
  for (size_t i = 0; i < a.args().size(); ++i) {
    if (auto c = a.args()[i] <=> b.args()[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string position_str(const Position& p) {
  if (p.empty()) return "e";
  std::string out;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) out += ".";
    out += std::to_string(p[i]);
  }
  return out;
}

bool is_prefix(const Position& p, const Position& q) {
  return p.size() <= q.size() && std::equal(p.begin(), p.end(), q.begin());
}

bool valid_position(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (int i : p) {
    if (cur->is_var() || i < 1 || i > static_cast<int>(cur->args().size())) {
      return false;
    }
    cur = &cur->args()[i - 1];
  }
  return true;
}

const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (int i : p) {
    if (cur->is_var() || i < 1 || i > static_cast<int>(cur->args().size())) {
      throw InvalidPosition("position " + position_str(p) +
                            " is not valid in " + to_string(t));
    }
    cur = &cur->args()[i - 1];
  }
  return *cur;
}

namespace {

Term replace_rec(const Term& t, const Position& p, size_t k, const Term& s) {
  if (k == p.size()) return s;
  int i = p[k];
  if (t.is_var() || i < 1 || i > static_cast<int>(t.args().size())) {
    throw InvalidPosition("position " + position_str(p) + " is not valid");
  }
  std::vector<Term> args = t.args();
  args[i - 1] = replace_rec(args[i - 1], p, k + 1, s);
  return Term::make(t.fun(), std::move(args));
}

void positions_rec(const Term& t, Position& cur, std::vector<Position>& out,
                   bool only_funs) {
  if (!only_funs || !t.is_var()) out.push_back(cur);
  if (t.is_var()) return;
  for (size_t i = 0; i < t.args().size(); ++i) {
    cur.push_back(static_cast<int>(i) + 1);
    positions_rec(t.args()[i], cur, out, only_funs);
    cur.pop_back();
  }
}

}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& s) {
  return replace_rec(t, p, 0, s);
}

std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  positions_rec(t, cur, out, false);
  return out;
}

std::vector<Position> fun_positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  positions_rec(t, cur, out, true);
  return out;
}

Term apply_subst(const Term& t, const Substitution& s) {
  if (s.empty()) return t;
  if (t.is_var()) {
    auto it = s.find(t.var_name());
    return it == s.end() ? t : it->second;
  }
  if (t.ground()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(apply_subst(a, s));
    changed = changed || !(args.back() == a);
  }
  if (!changed) return t;
  return Term::make(t.fun(), std::move(args));
}

Substitution compose(const Substitution& a, const Substitution& b) {
  Substitution out;
  for (const auto& [v, t] : a) out[v] = apply_subst(t, b);
  for (const auto& [v, t] : b) out.emplace(v, t);
  return out;
}

std::string substitution_str(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : s) {
    if (!first) out += ", ";
    first = false;
    out += v + " -> " + to_string(t);
  }
  return out + "}";
}

namespace {

void vars_rec(const Term& t, std::vector<std::string>& out,
              std::set<std::string>& seen) {
  if (t.is_var()) {
    if (seen.insert(t.var_name()).second) out.push_back(t.var_name());
    return;
  }
  if (t.ground()) return;
  for (const Term& a : t.args()) vars_rec(a, out, seen);
}

}  // namespace

std::vector<std::string> vars(const Term& t) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  vars_rec(t, out, seen);
  return out;
}

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.var_name());
    return;
  }
  if (t.ground()) return;
  for (const Term& a : t.args()) collect_vars(a, out);
}

bool occurs(const std::string& v, const Term& t) {
  if (t.is_var()) return t.var_name() == v;
  if (t.ground()) return false;
  for (const Term& a : t.args()) {
    if (occurs(v, a)) return true;
  }
  return false;
}

void collect_funs(const Term& t, std::set<Fun>& out) {
  if (t.is_var()) return;
  out.insert(t.fun());
  for (const Term& a : t.args()) collect_funs(a, out);
}

bool contains_fun(const Term& t, const std::function<bool(Fun)>& pred) {
  if (t.is_var()) return false;
  if (pred(t.fun())) return true;
  for (const Term& a : t.args()) {
    if (contains_fun(a, pred)) return true;
  }
  return false;
}

namespace {

bool match_rec(const Term& p, const Term& s, Substitution& sigma) {
  if (p.is_var()) {
    auto [it, inserted] = sigma.emplace(p.var_name(), s);
    return inserted || it->second == s;
  }
  if (s.is_var() || p.fun() != s.fun()) return false;
  for (size_t i = 0; i < p.args().size(); ++i) {
    if (!match_rec(p.args()[i], s.args()[i], sigma)) return false;
  }
  return true;
}

// Triangular-form unifier: bindings may refer to other bound variables.
class Unifier {
 public:
  Term walk(Term t) const {
    while (t.is_var()) {
      auto it = bind_.find(t.var_name());
      if (it == bind_.end()) break;
      t = it->second;
    }
    return t;
  }

  bool occurs_in(const std::string& v, const Term& t) const {
    Term w = walk(t);
    if (w.is_var()) return w.var_name() == v;
    if (w.ground()) return false;
    for (const Term& a : w.args()) {
      if (occurs_in(v, a)) return true;
    }
    return false;
  }

  bool unify(const Term& a, const Term& b) {
    std::vector<std::pair<Term, Term>> stack{{a, b}};
    while (!stack.empty()) {
      auto [x, y] = stack.back();
      stack.pop_back();
      x = walk(x);
      y = walk(y);
      if (x == y) continue;
      if (x.is_var()) {
        if (occurs_in(x.var_name(), y)) return false;
        bind_[x.var_name()] = y;
        continue;
      }
      if (y.is_var()) {
        if (occurs_in(y.var_name(), x)) return false;
        bind_[y.var_name()] = x;
        continue;
      }
      if (x.fun() != y.fun()) return false;
      for (size_t i = 0; i < x.args().size(); ++i) {
        stack.emplace_back(x.args()[i], y.args()[i]);
      }
    }
    return true;
  }

  Term resolve(const Term& t) const {
    Term w = walk(t);
    if (w.is_var() || w.ground()) return w;
    std::vector<Term> args;
    args.reserve(w.args().size());
    for (const Term& a : w.args()) args.push_back(resolve(a));
    return Term::make(w.fun(), std::move(args));
  }

  Substitution result() const {
    Substitution out;
    for (const auto& [v, t] : bind_) out[v] = resolve(t);
    return out;
  }

 private:
  std::map<std::string, Term> bind_;
};

}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& subject,
                                  Substitution seed) {
  if (!match_rec(pattern, subject, seed)) return std::nullopt;
  return seed;
}

bool is_variant(const Term& a, const Term& b) {
  auto injective_vars = [](const Substitution& s) {
    std::set<std::string> seen;
    for (const auto& [v, t] : s) {
      if (!t.is_var() || !seen.insert(t.var_name()).second) return false;
    }
    return true;
  };
  auto ab = match(a, b);
  return ab && injective_vars(*ab) && match(b, a).has_value();
}

std::optional<Substitution> unify(const Term& s, const Term& t) {
  Unifier u;
  if (!u.unify(s, t)) return std::nullopt;
  return u.result();
}

std::optional<Substitution> unify_all(
    const std::vector<std::pair<Term, Term>>& eqs) {
  Unifier u;
  for (const auto& [a, b] : eqs) {
    if (!u.unify(a, b)) return std::nullopt;
  }
  return u.result();
}

namespace {

bool is_sym(const Term& t, std::string_view name, int arity) {
  return !t.is_var() && t.fun().arity() == arity && t.fun().name() == name;
}

// Returns n if t is S^n(Z).
std::optional<long> peano_value(const Term& t) {
  long n = 0;
  const Term* cur = &t;
  while (is_sym(*cur, kSucc, 1)) {
    ++n;
    cur = &cur->args()[0];
  }
  if (is_sym(*cur, kZero, 0)) return n;
  return std::nullopt;
}

void print_infix(const Term& t, std::ostream& os);

void print_operand(const Term& t, std::ostream& os, bool paren_app,
                   bool paren_cons) {
  bool paren = (paren_app && t.is_app()) || (paren_cons && is_sym(t, kCons, 2));
  if (paren) os << "(";
  print_infix(t, os);
  if (paren) os << ")";
}

void print_infix(const Term& t, std::ostream& os) {
  if (t.is_var()) {
    os << t.var_name();
    return;
  }
  if (t.is_app()) {
    print_operand(t.args()[0], os, false, true);
    os << " @ ";
    print_operand(t.args()[1], os, true, true);
    return;
  }
  if (is_sym(t, kCons, 2)) {
    print_operand(t.args()[0], os, true, true);
    os << "::";
    print_operand(t.args()[1], os, true, false);
    return;
  }
  if (auto n = peano_value(t)) {
    os << *n;
    return;
  }
  os << t.fun().name();
  if (t.args().empty()) return;
  os << "(";
  for (size_t i = 0; i < t.args().size(); ++i) {
    if (i) os << ",";
    print_infix(t.args()[i], os);
  }
  os << ")";
}

void print_prefix(const Term& t, std::ostream& os) {
  if (t.is_var()) {
    os << t.var_name();
    return;
  }
  os << (t.is_app() ? std::string("app") : t.fun().name());
  if (t.args().empty()) return;
  os << "(";
  for (size_t i = 0; i < t.args().size(); ++i) {
    if (i) os << ",";
    print_prefix(t.args()[i], os);
  }
  os << ")";
}

}  // namespace

std::string to_string(const Term& t) {
  std::ostringstream os;
  print_infix(t, os);
  return os.str();
}

std::string to_prefix(const Term& t) {
  std::ostringstream os;
  print_prefix(t, os);
  return os.str();
}

std::string FreshSupply::next(std::string_view base) {
  std::string b = base_name(base);
  if (b.empty()) b = "v";
  for (;;) {
    std::string name = b + "~" + std::to_string(++counter_);
    if (!avoid_.count(name)) {
      avoid_.insert(name);
      return name;
    }
  }
}

Term FreshSupply::rename(const Term& t, Substitution* renaming) {
  Substitution local;
  Substitution& r = renaming ? *renaming : local;
  for (const std::string& v : vars(t)) {
    if (!r.count(v)) r[v] = next_var(v);
  }
  return apply_subst(t, r);
}

std::string base_name(std::string_view var) {
  size_t cut = var.find_first_of("#~");
  return std::string(var.substr(0, cut));
}

}  // namespace ho2trs
