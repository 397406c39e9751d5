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

// The source language: PCF with data constructors and match, weak
// call-by-value.
//
// Concrete syntax (OCaml-like):
//
//   type t = A | B of t * t ;;
//   let [rec] f x y = e ;;        top-level definitions, `main` is the entry
//   e ::= x | C | C e | C (e, e) | e e | e :: e | [] | [e; e] | 0 | 1 | ...
//       | fun x y -> e | fix f -> e | let [rec] f x = e in e
//       | match e with | C (x, y) -> e | ...
//
// Integer literals are Peano numerals over the built-in Z and S. Top-level
// definitions are closed and substituted at their use sites; copies share
// node ids, so each definition still yields a single closure symbol.

#ifndef HO2TRS_PCF_H_
#define HO2TRS_PCF_H_

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ho2trs/errors.h"
#include "ho2trs/term.h"

namespace ho2trs {

enum class ExprKind { kVar, kCon, kLam, kApp, kFix, kMatch };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Case {
  std::string con;
  // Bound variables; `_` patterns get a fresh unused name.
  std::vector<std::string> vars;
  ExprPtr body;
};

struct Expr {
  ExprKind kind = ExprKind::kVar;
  int id = 0;
  SourceLoc loc;
  // Variable name, constructor name, or the binder of Lam and Fix.
  std::string name;
  // Con: arguments. App: {fn, arg}. Lam, Fix: {body}. Match: {scrutinee}.
  std::vector<ExprPtr> kids;
  std::vector<Case> cases;
  // Display name for the closure symbol this node becomes.
  std::string hint;

  const ExprPtr& body() const { return kids.at(0); }
};

ExprPtr make_var(std::string name, int id = 0, SourceLoc loc = {});
ExprPtr make_con(std::string name, std::vector<ExprPtr> args, int id = 0,
                 SourceLoc loc = {});
ExprPtr make_lam(std::string var, ExprPtr body, int id = 0,
                 std::string hint = {}, SourceLoc loc = {});
ExprPtr make_app(ExprPtr fn, ExprPtr arg, int id = 0, SourceLoc loc = {});
ExprPtr make_fix(std::string var, ExprPtr body, int id = 0,
                 std::string hint = {}, SourceLoc loc = {});
ExprPtr make_match(ExprPtr scrutinee, std::vector<Case> cases, int id = 0,
                   std::string hint = {}, SourceLoc loc = {});

struct ConDecl {
  std::string name;
  int arity = 0;
  std::string type;
};

struct Program {
  std::vector<std::string> params;
  ExprPtr body;
  // Data constructors the program may use, in declaration order.
  std::vector<ConDecl> constructors;
  // Top-level definitions other than main, in source order.
  std::vector<std::pair<std::string, ExprPtr>> lets;

  const ConDecl* find_constructor(std::string_view name) const;
};

Program parse_program(std::string_view text);
// Parses a closed data term such as `1::2::[]`, `[[]; []]` or `B(A, A)`.
Term parse_data_term(std::string_view text, const Program& p);

// Source text that parses back to an alpha-equivalent program.
std::string print_program(const Program& p);
std::string print_expr(const ExprPtr& e);
// Equality modulo renaming of bound variables; ids and hints are ignored.
bool alpha_equal(const ExprPtr& a, const ExprPtr& b);
bool alpha_equal(const Program& a, const Program& b);

// e[x := v], stopping at binders that shadow x.
ExprPtr substitute(const ExprPtr& e, const std::string& x, const ExprPtr& v);

// Free variables ordered by binder position in the source.
std::vector<std::string> free_vars(const ExprPtr& e);
// Position of a binder in the program-wide variable order.
int binder_order(std::string_view var);

// Simple types over a single ground type.
struct SimpleType;
using TypePtr = std::shared_ptr<const SimpleType>;
struct SimpleType {
  TypePtr from;  // null for Ground
  TypePtr to;
  bool is_ground() const { return from == nullptr; }
  std::string str() const;
  static TypePtr ground();
  static TypePtr arrow(TypePtr a, TypePtr b);
};

struct TypedProgram {
  Program program;
  std::map<int, TypePtr> node_types;
  std::map<std::string, TypePtr> var_types;
  std::map<std::string, TypePtr> let_types;
};

// Monomorphic inference. Unconstrained type variables default to Ground.
TypedProgram infer_types(const Program& p);

struct EvalResult {
  Term value;
  long steps = 0;
};

// Substitution-based evaluator. Counts one step per beta, fix unrolling and
// match dispatch; applying the program to its inputs counts as one step.
EvalResult pcf_eval(const Program& p, const std::vector<Term>& inputs,
                    long fuel = 1000000);

}  // namespace ho2trs

#endif  // HO2TRS_PCF_H_
