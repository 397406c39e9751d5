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

// First-order terms, positions, substitutions, matching and unification.

#ifndef HO2TRS_TERM_H_
#define HO2TRS_TERM_H_

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ho2trs {

// Built-in data constructors: lists and Peano naturals.
inline constexpr std::string_view kNil = "[]";
inline constexpr std::string_view kCons = "::";
inline constexpr std::string_view kZero = "Z";
inline constexpr std::string_view kSucc = "S";

// An interned (name, arity) pair. Handles compare equal iff they denote the
// same pair; ordering is by name, then arity, so it is stable across runs.
class Fun {
 public:
  Fun() = default;

  static Fun get(std::string_view name, int arity);
  // The binary application symbol, written `@`.
  static Fun app();

  const std::string& name() const;
  int arity() const;
  bool is_app() const { return *this == app(); }
  bool valid() const { return info_ != nullptr; }

  friend bool operator==(Fun a, Fun b) { return a.info_ == b.info_; }
  friend std::strong_ordering operator<=>(Fun a, Fun b);

  size_t hash() const { return std::hash<const void*>()(info_); }

  struct Info;

 private:
  explicit Fun(const Info* info) : info_(info) {}
  const Info* info_ = nullptr;
};

// Immutable term. Either a variable or a function symbol applied to exactly
// arity-many arguments. Copies share structure.
class Term {
 public:
  Term() = default;

  static Term var(std::string name);
  static Term make(Fun f, std::vector<Term> args);
  static Term make(std::string_view name, std::vector<Term> args);
  static Term constant(std::string_view name) { return make(name, {}); }
  // t1 @ t2
  static Term apply(Term fn, Term arg);

  bool valid() const { return node_ != nullptr; }
  bool is_var() const;
  const std::string& var_name() const;
  Fun fun() const;
  const std::vector<Term>& args() const;
  // 0-based argument access.
  const Term& arg(size_t i) const { return args()[i]; }
  bool is_app() const { return !is_var() && fun().is_app(); }

  size_t hash() const;
  // Number of nodes, variables included.
  size_t size() const;
  size_t depth() const;
  bool ground() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  size_t operator()(const Term& t) const { return t.hash(); }
};

// 1-based child indices from the root.
using Position = std::vector<int>;

std::string position_str(const Position& p);
// True iff p is a (non-strict) prefix of q.
bool is_prefix(const Position& p, const Position& q);

const Term& subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& s);
bool valid_position(const Term& t, const Position& p);

// All positions of t in pre-order (root first, then children left to right).
std::vector<Position> positions(const Term& t);
// Positions whose subterm is not a variable, in pre-order.
std::vector<Position> fun_positions(const Term& t);

using Substitution = std::map<std::string, Term>;

Term apply_subst(const Term& t, const Substitution& s);
// apply_subst(t, compose(a, b)) == apply_subst(apply_subst(t, a), b)
Substitution compose(const Substitution& a, const Substitution& b);
std::string substitution_str(const Substitution& s);

// Variables in order of first occurrence (pre-order, left to right).
std::vector<std::string> vars(const Term& t);
void collect_vars(const Term& t, std::set<std::string>& out);
bool occurs(const std::string& v, const Term& t);
// Every function symbol occurring in t.
void collect_funs(const Term& t, std::set<Fun>& out);
bool contains_fun(const Term& t, const std::function<bool(Fun)>& pred);

// Matches pattern against subject. Non-linear patterns are checked for
// consistency. `seed` pre-binds variables.
std::optional<Substitution> match(const Term& pattern, const Term& subject,
                                  Substitution seed = {});
// Equal up to a bijective renaming of variables.
bool is_variant(const Term& a, const Term& b);
// Most general unifier with occurs check. The result is idempotent.
std::optional<Substitution> unify(const Term& s, const Term& t);
// Simultaneous unification of a list of equations.
std::optional<Substitution> unify_all(
    const std::vector<std::pair<Term, Term>>& eqs);

// Infix rendering: `@` left-associative, `x::y`, `[]`, Peano numerals as
// digits.
std::string to_string(const Term& t);
// Prefix rendering with the application symbol written as app(t,s).
std::string to_prefix(const Term& t);

// Generates variable names that are fresh for a given avoid-set. Names have
// the form `base~N`, which never collides with canonical rule variables.
class FreshSupply {
 public:
  FreshSupply() = default;
  explicit FreshSupply(std::set<std::string> avoid)
      : avoid_(std::move(avoid)) {}
  std::string next(std::string_view base);
  Term next_var(std::string_view base) { return Term::var(next(base)); }
  // Renames every variable of t to a fresh one, consistently.
  Term rename(const Term& t, Substitution* renaming = nullptr);

 private:
  std::set<std::string> avoid_;
  long counter_ = 0;
};

// The user-facing part of a variable name: strips `#k` and `~k` suffixes.
std::string base_name(std::string_view var);

}  // namespace ho2trs

template <>
struct std::hash<ho2trs::Term> {
  size_t operator()(const ho2trs::Term& t) const { return t.hash(); }
};

template <>
struct std::hash<ho2trs::Fun> {
  size_t operator()(ho2trs::Fun f) const { return f.hash(); }
};

#endif  // HO2TRS_TERM_H_
