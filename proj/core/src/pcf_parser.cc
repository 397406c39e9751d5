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

#include <cctype>
#include <map>
#include <set>

#include "ho2trs/pcf.h"

namespace ho2trs {

namespace {

enum class Tok { kIdent, kUIdent, kInt, kSym, kEof };

struct Token {
  Tok kind = Tok::kEof;
  std::string text;
  SourceLoc loc;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {"let",  "rec",  "in",  "fun",
                                          "match", "with", "type", "of",
                                          "fix",  "and"};
  return k;
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "(*") {
      SourceLoc start{line, col};
      int depth = 0;
      do {
        if (src.substr(i, 2) == "(*") {
          ++depth;
          advance(2);
        } else if (src.substr(i, 2) == "*)") {
          --depth;
          advance(2);
        } else {
          advance(1);
        }
      } while (depth > 0 && i < src.size());
      if (depth > 0) throw ParseError(start, "unterminated comment");
      continue;
    }
    Token t;
    t.loc = {line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) ||
              src[j] == '_' || src[j] == '\'')) {
        ++j;
      }
      t.text = std::string(src.substr(i, j - i));
      t.kind = std::isupper(static_cast<unsigned char>(c)) ? Tok::kUIdent
                                                            : Tok::kIdent;
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
        ++j;
      }
      t.text = std::string(src.substr(i, j - i));
      t.kind = Tok::kInt;
      advance(j - i);
    } else {
      static const char* kMulti[] = {"::", ";;", "->"};
      t.kind = Tok::kSym;
      for (const char* m : kMulti) {
        if (src.substr(i, 2) == m) t.text = m;
      }
      if (t.text.empty()) {
        if (std::string_view("()[];,|=*").find(c) == std::string_view::npos) {
          throw ParseError(t.loc, std::string("unexpected character '") + c +
                                      "'");
        }
        t.text = std::string(1, c);
      }
      advance(t.text.size());
    }
    out.push_back(std::move(t));
  }
  Token eof;
  eof.loc = {line, col};
  out.push_back(eof);
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, bool data_only)
      : toks_(std::move(toks)), data_only_(data_only) {}

  void use_constructors(const std::vector<ConDecl>& cs) {
    for (const ConDecl& c : cs) add_constructor(c);
    frozen_ = true;
  }

  Program program() {
    Program p;
    bool have_main = false;
    while (!at_eof()) {
      if (accept_sym(";;")) continue;
      if (peek_kw("type")) {
        type_decl();
      } else if (peek_kw("let")) {
        top_let(p, have_main);
      } else {
        fail("expected `let` or `type`");
      }
    }
    if (!have_main) {
      throw ParseError(peek().loc, "program has no `main` definition");
    }
    p.constructors = constructors_;
    return p;
  }

  ExprPtr data_expr() {
    ExprPtr e = expr();
    if (!at_eof()) fail("trailing input after data term");
    return e;
  }

 private:
  // Token helpers.
  const Token& peek(size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool at_eof() const { return peek().kind == Tok::kEof; }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string near = t.kind == Tok::kEof ? "end of input" : "`" + t.text + "`";
    throw ParseError(t.loc, msg + " near " + near);
  }
  bool peek_sym(std::string_view s, size_t k = 0) const {
    return peek(k).kind == Tok::kSym && peek(k).text == s;
  }
  bool accept_sym(std::string_view s) {
    if (!peek_sym(s)) return false;
    next();
    return true;
  }
  void expect_sym(std::string_view s) {
    if (!accept_sym(s)) fail("expected `" + std::string(s) + "`");
  }
  bool peek_kw(std::string_view k) const {
    return peek().kind == Tok::kIdent && peek().text == k;
  }
  bool accept_kw(std::string_view k) {
    if (!peek_kw(k)) return false;
    next();
    return true;
  }
  void expect_kw(std::string_view k) {
    if (!accept_kw(k)) fail("expected `" + std::string(k) + "`");
  }
  bool peek_binder() const {
    return peek().kind == Tok::kIdent && !keywords().count(peek().text);
  }
  Token expect_binder() {
    if (!peek_binder()) fail("expected a variable name");
    return next();
  }

  // Constructors.
  void add_constructor(const ConDecl& c) {
    if (con_index_.count(c.name)) return;
    con_index_[c.name] = constructors_.size();
    constructors_.push_back(c);
    type_cons_[c.type].push_back(c.name);
  }
  const ConDecl& constructor(const std::string& name, SourceLoc loc) {
    auto it = con_index_.find(name);
    if (it == con_index_.end() && !frozen_) {
      if (name == kNil || name == kCons) {
        add_constructor({std::string(kNil), 0, "list"});
        add_constructor({std::string(kCons), 2, "list"});
      } else if (name == kZero || name == kSucc) {
        add_constructor({std::string(kZero), 0, "nat"});
        add_constructor({std::string(kSucc), 1, "nat"});
      }
      it = con_index_.find(name);
    }
    if (it == con_index_.end()) {
      throw ParseError(loc, "unknown constructor " + name);
    }
    return constructors_[it->second];
  }

  void type_decl() {
    SourceLoc loc = peek().loc;
    expect_kw("type");
    Token name = expect_binder();
    if (con_types_.count(name.text) || name.text == "list" ||
        name.text == "nat") {
      throw ParseError(name.loc, "type " + name.text + " is already defined");
    }
    con_types_.insert(name.text);
    expect_sym("=");
    accept_sym("|");
    do {
      if (peek().kind != Tok::kUIdent) fail("expected a constructor name");
      Token c = next();
      int arity = 0;
      if (accept_kw("of")) {
        do {
          if (peek().kind != Tok::kIdent) fail("expected a type name");
          next();
          ++arity;
        } while (accept_sym("*"));
      }
      if (con_index_.count(c.text) || c.text == kZero || c.text == kSucc) {
        throw ParseError(c.loc, "constructor " + c.text + " is already defined");
      }
      add_constructor({c.text, arity, name.text});
    } while (accept_sym("|"));
    (void)loc;
  }

  // Binders and ids.
  std::string fresh_binder(const std::string& src) {
    return src + "#" + std::to_string(++binders_);
  }
  int fresh_id() { return ++ids_; }
  std::string anon_hint() { return "C" + std::to_string(++lambdas_); }

  struct Scope {
    Parser* p;
    size_t mark;
    explicit Scope(Parser* parser) : p(parser), mark(parser->scope_.size()) {}
    ~Scope() { p->scope_.resize(mark); }
  };
  void bind(const std::string& src, const std::string& uniq) {
    scope_.emplace_back(src, uniq);
  }

  // let f x y = e  →  λx.λy.e with hints f, f1, ...
  ExprPtr lambdas(const std::vector<Token>& params,
                  const std::vector<std::string>& uniq, ExprPtr body,
                  const std::string& name) {
    for (size_t k = params.size(); k-- > 0;) {
      std::string hint = k == 0 ? name : name + std::to_string(k);
      body = make_lam(uniq[k], body, lam_ids_[k], hint, params[k].loc);
    }
    return body;
  }

  // Parses `f x y = e` after `let [rec]`. Returns (name token, expression).
  std::pair<Token, ExprPtr> let_binding(bool rec, bool top,
                                        std::vector<std::string>* out_params) {
    Token name = expect_binder();
    if (peek_kw("and")) fail("mutual recursion is not supported");
    Scope scope(this);
    std::string fix_var;
    int fix_id = 0;
    if (rec) {
      fix_var = fresh_binder(name.text);
      fix_id = fresh_id();
      bind(name.text, fix_var);
    }
    std::vector<Token> params;
    std::vector<std::string> uniq;
    lam_ids_.clear();
    while (peek_binder()) {
      params.push_back(next());
      uniq.push_back(fresh_binder(params.back().text));
      lam_ids_.push_back(fresh_id());
    }
    std::vector<int> ids = lam_ids_;
    for (size_t k = 0; k < params.size(); ++k) bind(params[k].text, uniq[k]);
    if (peek_kw("and")) fail("mutual recursion is not supported");
    expect_sym("=");
    std::string saved = let_name_;
    let_name_ = name.text;
    ExprPtr body = expr();
    let_name_ = saved;
    ExprPtr e;
    if (out_params) {
      *out_params = uniq;
      e = body;
    } else {
      lam_ids_ = ids;
      e = lambdas(params, uniq, body, name.text);
    }
    if (rec) {
      if (params.empty() && e->kind != ExprKind::kLam) {
        throw ParseError(name.loc,
                         "recursive definition of " + name.text +
                             " must be a function");
      }
      e = make_fix(fix_var, e, fix_id, name.text, name.loc);
    }
    (void)top;
    return {name, e};
  }

  void top_let(Program& p, bool& have_main) {
    expect_kw("let");
    bool rec = accept_kw("rec");
    if (peek_binder() && peek().text == "main") {
      if (rec) fail("main must not be recursive");
      std::vector<std::string> params;
      auto [name, body] = let_binding(false, true, &params);
      while (body->kind == ExprKind::kLam) {
        params.push_back(body->name);
        body = body->body();
      }
      p.params = params;
      p.body = body;
      have_main = true;
      top_["main"] = nullptr;
    } else {
      auto [name, e] = let_binding(rec, true, nullptr);
      top_[name.text] = e;
      p.lets.emplace_back(name.text, e);
    }
    if (!accept_sym(";;") && !at_eof() && !peek_kw("let") &&
        !peek_kw("type")) {
      fail("expected `;;`");
    }
  }

  // Expressions.
  ExprPtr expr() {
    if (data_only_ && (peek_kw("let") || peek_kw("fun") || peek_kw("match") ||
                       peek_kw("fix"))) {
      fail("expected a data term");
    }
    if (peek_kw("let")) return local_let();
    if (peek_kw("fun")) return fun();
    if (peek_kw("fix")) {
      SourceLoc loc = next().loc;
      Token v = expect_binder();
      std::string u = fresh_binder(v.text);
      int id = fresh_id();
      expect_sym("->");
      Scope scope(this);
      bind(v.text, u);
      ExprPtr body = expr();
      return make_fix(u, body, id, v.text, loc);
    }
    if (peek_kw("match")) return match();
    return cons_expr();
  }

  ExprPtr local_let() {
    SourceLoc loc = next().loc;
    std::string hint = anon_hint();
    int lam_id = fresh_id();
    bool rec = accept_kw("rec");
    auto [name, e1] = let_binding(rec, false, nullptr);
    expect_kw("in");
    std::string u = fresh_binder(name.text);
    Scope scope(this);
    bind(name.text, u);
    ExprPtr e2 = expr();
    ExprPtr lam = make_lam(u, e2, lam_id, hint, loc);
    return make_app(lam, e1, fresh_id(), loc);
  }

  ExprPtr fun() {
    SourceLoc loc = next().loc;
    std::vector<Token> params;
    std::vector<std::string> uniq;
    std::vector<std::string> hints;
    std::vector<int> ids;
    do {
      params.push_back(expect_binder());
      uniq.push_back(fresh_binder(params.back().text));
      hints.push_back(anon_hint());
      ids.push_back(fresh_id());
    } while (peek_binder());
    expect_sym("->");
    Scope scope(this);
    for (size_t k = 0; k < params.size(); ++k) bind(params[k].text, uniq[k]);
    ExprPtr body = expr();
    for (size_t k = params.size(); k-- > 0;) {
      body = make_lam(uniq[k], body, ids[k], hints[k], k ? params[k].loc : loc);
    }
    return body;
  }

  Case pattern_case() {
    SourceLoc loc = peek().loc;
    Case c;
    std::vector<Token> vars;
    auto pat_var = [&]() {
      if (!peek_binder()) fail("expected a pattern variable");
      vars.push_back(next());
    };
    bool paren = accept_sym("(");
    if (peek_sym("[") && peek_sym("]", 1)) {
      next();
      next();
      c.con = std::string(kNil);
    } else if (peek().kind == Tok::kInt) {
      Token t = next();
      if (t.text != "0") {
        throw ParseError(t.loc, "only 0 may be used as a numeric pattern");
      }
      c.con = std::string(kZero);
    } else if (peek().kind == Tok::kUIdent) {
      c.con = next().text;
      const ConDecl& d = constructor(c.con, loc);
      if (d.arity == 1) {
        bool p2 = accept_sym("(");
        pat_var();
        if (p2) expect_sym(")");
      } else if (d.arity > 1) {
        expect_sym("(");
        pat_var();
        while (accept_sym(",")) pat_var();
        expect_sym(")");
      }
    } else {
      pat_var();
      expect_sym("::");
      pat_var();
      c.con = std::string(kCons);
    }
    if (paren) expect_sym(")");
    const ConDecl& d = constructor(c.con, loc);
    if (static_cast<int>(vars.size()) != d.arity) {
      throw ParseError(loc, "constructor " + c.con + " expects " +
                                std::to_string(d.arity) + " arguments");
    }
    std::set<std::string> seen;
    for (const Token& v : vars) {
      if (v.text != "_" && !seen.insert(v.text).second) {
        throw ParseError(v.loc, "variable " + v.text +
                                    " is bound twice in this pattern");
      }
    }
    expect_sym("->");
    Scope scope(this);
    for (const Token& v : vars) {
      c.vars.push_back(fresh_binder(v.text));
      if (v.text != "_") bind(v.text, c.vars.back());
    }
    c.body = expr();
    return c;
  }

  ExprPtr match() {
    SourceLoc loc = next().loc;
    int id = fresh_id();
    ExprPtr scrut = expr();
    expect_kw("with");
    accept_sym("|");
    std::vector<Case> cases;
    std::vector<SourceLoc> locs;
    do {
      locs.push_back(peek().loc);
      cases.push_back(pattern_case());
    } while (accept_sym("|"));
    // Cases must cover exactly the constructors of one datatype.
    const std::string& type = constructor(cases[0].con, locs[0]).type;
    std::set<std::string> seen;
    for (size_t i = 0; i < cases.size(); ++i) {
      const ConDecl& d = constructor(cases[i].con, locs[i]);
      if (d.type != type) {
        throw TypeError(locs[i], "constructor " + d.name + " of type " +
                                     d.type + " in a match on type " + type);
      }
      if (!seen.insert(d.name).second) {
        throw ParseError(locs[i], "duplicate case for constructor " + d.name);
      }
    }
    for (const std::string& c : type_cons_[type]) {
      if (!seen.count(c)) {
        throw TypeError(loc, "match is not exhaustive: missing case " + c);
      }
    }
    std::string hint =
        "match[" + (let_name_.empty() ? std::string("main") : let_name_) + "]";
    return make_match(scrut, std::move(cases), id, hint, loc);
  }

  bool starts_atom() const {
    const Token& t = peek();
    if (t.kind == Tok::kIdent) return !keywords().count(t.text);
    if (t.kind == Tok::kUIdent || t.kind == Tok::kInt) return true;
    return peek_sym("(") || peek_sym("[");
  }

  ExprPtr cons_expr() {
    SourceLoc loc = peek().loc;
    ExprPtr head = app_expr();
    if (!accept_sym("::")) return head;
    constructor(std::string(kCons), loc);
    ExprPtr tail = (peek_kw("let") || peek_kw("fun") || peek_kw("match") ||
                    peek_kw("fix"))
                       ? expr()
                       : cons_expr();
    return make_con(std::string(kCons), {head, tail}, fresh_id(), loc);
  }

  ExprPtr app_expr() {
    SourceLoc loc = peek().loc;
    ExprPtr f = atom();
    while (starts_atom()) {
      if (data_only_) fail("application is not allowed in a data term");
      ExprPtr a = atom();
      f = make_app(f, a, fresh_id(), loc);
    }
    return f;
  }

  ExprPtr peano(long n, SourceLoc loc) {
    constructor(std::string(kZero), loc);
    ExprPtr e = make_con(std::string(kZero), {}, fresh_id(), loc);
    for (long k = 0; k < n; ++k) {
      e = make_con(std::string(kSucc), {e}, fresh_id(), loc);
    }
    return e;
  }

  ExprPtr atom() {
    const Token& t = peek();
    SourceLoc loc = t.loc;
    switch (t.kind) {
      case Tok::kIdent: {
        if (keywords().count(t.text)) fail("unexpected keyword");
        Token v = next();
        if (data_only_) {
          throw ParseError(loc, "variable " + v.text +
                                    " is not allowed in a data term");
        }
        for (size_t k = scope_.size(); k-- > 0;) {
          if (scope_[k].first == v.text) {
            return make_var(scope_[k].second, fresh_id(), loc);
          }
        }
        auto it = top_.find(v.text);
        if (it != top_.end() && it->second) return it->second;
        if (it != top_.end()) {
          throw ParseError(loc, "main cannot be referenced");
        }
        throw ParseError(loc, "unbound variable " + v.text);
      }
      case Tok::kInt: {
        Token v = next();
        if (v.text.size() > 6) throw ParseError(loc, "numeral too large");
        return peano(std::stol(v.text), loc);
      }
      case Tok::kUIdent: {
        Token c = next();
        const ConDecl& d = constructor(c.text, loc);
        std::vector<ExprPtr> args;
        if (d.arity == 1) {
          args.push_back(atom());
        } else if (d.arity > 1) {
          expect_sym("(");
          args.push_back(expr());
          while (accept_sym(",")) args.push_back(expr());
          expect_sym(")");
          if (static_cast<int>(args.size()) != d.arity) {
            throw ParseError(loc, "constructor " + d.name + " expects " +
                                      std::to_string(d.arity) + " arguments");
          }
        }
        return make_con(d.name, std::move(args), fresh_id(), loc);
      }
      case Tok::kSym:
        if (accept_sym("(")) {
          ExprPtr e = expr();
          expect_sym(")");
          return e;
        }
        if (accept_sym("[")) {
          constructor(std::string(kNil), loc);
          std::vector<ExprPtr> items;
          if (!peek_sym("]")) {
            items.push_back(expr());
            while (accept_sym(";")) items.push_back(expr());
          }
          expect_sym("]");
          ExprPtr e = make_con(std::string(kNil), {}, fresh_id(), loc);
          for (size_t k = items.size(); k-- > 0;) {
            e = make_con(std::string(kCons), {items[k], e}, fresh_id(), loc);
          }
          return e;
        }
        break;
      default:
        break;
    }
    fail("expected an expression");
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  bool data_only_ = false;
  bool frozen_ = false;
  int ids_ = 0;
  int binders_ = 0;
  int lambdas_ = 0;
  std::vector<int> lam_ids_;
  std::string let_name_;
  std::vector<std::pair<std::string, std::string>> scope_;
  std::map<std::string, ExprPtr> top_;
  std::vector<ConDecl> constructors_;
  std::map<std::string, size_t> con_index_;
  std::map<std::string, std::vector<std::string>> type_cons_;
  std::set<std::string> con_types_;
};

Term to_data_term(const ExprPtr& e) {
  if (e->kind != ExprKind::kCon) {
    throw ParseError(e->loc, "expected a data term");
  }
  std::vector<Term> args;
  for (const ExprPtr& k : e->kids) args.push_back(to_data_term(k));
  return Term::make(e->name, std::move(args));
}

}  // namespace

Program parse_program(std::string_view text) {
  Parser p(lex(text), false);
  return p.program();
}

Term parse_data_term(std::string_view text, const Program& prog) {
  Parser p(lex(text), true);
  p.use_constructors(prog.constructors);
  return to_data_term(p.data_expr());
}

}  // namespace ho2trs
