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

#include "ho2trs/trs_io.h"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <vector>

#include "ho2trs/errors.h"

namespace ho2trs {

std::optional<OutputFormat> parse_format(std::string_view name) {
  if (name == "classic" || name == "classic_trs") return OutputFormat::kClassic;
  if (name == "applicative" || name == "applicative_trs") {
    return OutputFormat::kApplicative;
  }
  if (name == "debug" || name == "internal_debug") return OutputFormat::kDebug;
  return std::nullopt;
}

std::string format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::kClassic:
      return "classic";
    case OutputFormat::kApplicative:
      return "applicative";
    case OutputFormat::kDebug:
      return "debug";
  }
  return "?";
}

namespace {

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::string sanitize(const std::string& name) {
  if (name == "::") return "Cons";
  if (name == "[]") return "Nil";
  if (name == "@") return "app";
  if (!name.empty() && std::all_of(name.begin(), name.end(), name_char)) {
    return name;
  }
  std::string out;
  for (char c : name) {
    if (name_char(c)) {
      out += c;
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  if (out.empty()) out = "f";
  return out;
}

std::set<std::string> rule_vars(const Atrs& a) {
  std::set<std::string> vs;
  for (const Rule& r : a.rules()) collect_vars(r.lhs, vs);
  return vs;
}

}  // namespace

std::map<Fun, std::string> display_names(const Atrs& a, OutputFormat f) {
  std::set<Fun> funs = a.funs();
  for (Fun g : a.info().defined) funs.insert(g);
  // Unchanged names first, so that a clean name is never displaced by a
  // sanitized one.
  std::vector<Fun> order;
  for (Fun g : funs) {
    if (sanitize(g.name()) == g.name()) order.push_back(g);
  }
  for (Fun g : funs) {
    if (sanitize(g.name()) != g.name()) order.push_back(g);
  }
  std::set<std::string> used = rule_vars(a);
  std::map<Fun, std::string> out;
  for (Fun g : order) {
    if (f == OutputFormat::kDebug) {
      out[g] = g.name();
      continue;
    }
    std::string base = sanitize(g.name());
    std::string name = base;
    for (int k = 2; used.count(name); ++k) name = base + "_" + std::to_string(k);
    used.insert(name);
    out[g] = name;
  }
  return out;
}

namespace {

void print_term(const Term& t, const std::map<Fun, std::string>& names,
                std::ostream& os) {
  if (t.is_var()) {
    os << t.var_name();
    return;
  }
  os << names.at(t.fun());
  if (t.args().empty()) return;
  os << "(";
  for (size_t i = 0; i < t.args().size(); ++i) {
    if (i) os << ",";
    print_term(t.arg(i), names, os);
  }
  os << ")";
}

}  // namespace

std::string emit(const Atrs& a, OutputFormat f) {
  if (f == OutputFormat::kDebug) return a.str();
  if (f == OutputFormat::kClassic && a.uses_application()) {
    throw FormatConstraintViolated(
        "the classic format needs an application-free system; use the "
        "applicative format");
  }
  std::map<Fun, std::string> names = display_names(a, f);
  std::set<Fun> in_rules;
  for (const Rule& r : a.rules()) {
    collect_funs(r.lhs, in_rules);
    collect_funs(r.rhs, in_rules);
  }
  std::ostringstream os;
  os << "(COMMENT\n";
  os << "main: " << names.at(a.main()) << " " << a.main().arity() << "\n";
  std::string renamed;
  for (const auto& [g, n] : names) {
    // Symbols that no longer occur are dropped.
    bool occurs = in_rules.count(g) || g == a.main() || a.info().data.count(g);
    if (occurs && n != g.name()) renamed += " " + n + "=" + g.name();
  }
  if (!renamed.empty()) os << "names:" << renamed << "\n";
  // Defined symbols that occur without a rule would otherwise read back as
  // constructors.
  std::string defined;
  for (Fun g : in_rules) {
    if (g.is_app() || !a.is_defined(g)) continue;
    bool has_rule = false;
    for (const Rule& r : a.rules()) has_rule = has_rule || r.lhs.fun() == g;
    if (!has_rule) defined += " " + names.at(g) + "/" + std::to_string(g.arity());
  }
  if (!defined.empty()) os << "defined:" << defined << "\n";
  if (!a.info().data.empty()) {
    os << "data:";
    for (Fun g : a.info().data) {
      os << " " << names.at(g) << "/" << g.arity();
    }
    os << "\n";
  }
  if (!a.info().spines.empty()) {
    os << "spines:";
    for (const auto& [g, n] : a.info().spines) {
      if (in_rules.count(g)) os << " " << names.at(g) << "/" << g.arity() << "=" << n;
    }
    os << "\n";
  }
  os << ")\n";
  os << "(STRATEGY INNERMOST)\n";
  os << "(VAR";
  for (const std::string& v : rule_vars(a)) os << " " << v;
  os << ")\n";
  if (a.rules().empty()) {
    os << "(RULES)\n";
    return os.str();
  }
  os << "(RULES\n";
  for (const Rule& r : a.rules()) {
    os << "  ";
    print_term(r.lhs, names, os);
    os << " -> ";
    print_term(r.rhs, names, os);
    os << "\n";
  }
  os << ")\n";
  return os.str();
}

// Parsing.

namespace {

struct Token {
  enum Kind { kOpen, kClose, kComma, kArrow, kName, kEnd } kind;
  std::string text;
  SourceLoc loc;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    skip();
    SourceLoc loc{line_, col_};
    if (i_ >= s_.size()) return {Token::kEnd, "", loc};
    char c = s_[i_];
    if (c == '(') return take(1, Token::kOpen, loc);
    if (c == ')') return take(1, Token::kClose, loc);
    if (c == ',') return take(1, Token::kComma, loc);
    if (s_.substr(i_, 2) == "->" &&
        (i_ + 2 >= s_.size() || !word_char(s_[i_ + 2]))) {
      return take(2, Token::kArrow, loc);
    }
    size_t start = i_;
    while (i_ < s_.size() && word_char(s_[i_])) advance();
    return {Token::kName, std::string(s_.substr(start, i_ - start)), loc};
  }

  // Raw text up to the parenthesis closing an already opened one.
  std::string raw_block(SourceLoc open) {
    int depth = 1;
    size_t start = i_;
    while (i_ < s_.size()) {
      if (s_[i_] == '(') ++depth;
      if (s_[i_] == ')' && --depth == 0) {
        std::string out(s_.substr(start, i_ - start));
        advance();
        return out;
      }
      advance();
    }
    throw ParseError(open, "unbalanced parenthesis");
  }

 private:
  static bool word_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' &&
           c != ')' && c != ',';
  }

  void advance() {
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) {
      advance();
    }
  }

  Token take(size_t n, Token::Kind k, SourceLoc loc) {
    std::string t(s_.substr(i_, n));
    for (size_t j = 0; j < n; ++j) advance();
    return {k, t, loc};
  }

  std::string_view s_;
  size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct Header {
  std::optional<std::pair<std::string, int>> main;
  std::map<std::string, std::string> names;
  std::vector<std::pair<std::string, int>> defined;
  std::vector<std::pair<std::pair<std::string, int>, int>> spines;
  std::vector<std::pair<std::string, int>> data;
};

std::pair<std::string, int> split_arity(const std::string& s, SourceLoc loc) {
  size_t slash = s.rfind('/');
  if (slash == std::string::npos) throw ParseError(loc, "expected name/arity");
  return {s.substr(0, slash), std::stoi(s.substr(slash + 1))};
}

void read_header(const std::string& text, SourceLoc loc, Header& h) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    std::string item;
    if (key == "main:") {
      std::string name;
      int arity = 0;
      if (ls >> name >> arity) h.main = {name, arity};
    } else if (key == "names:") {
      while (ls >> item) {
        size_t eq = item.find('=');
        if (eq == std::string::npos) throw ParseError(loc, "bad name map entry");
        h.names[item.substr(0, eq)] = item.substr(eq + 1);
      }
    } else if (key == "defined:") {
      while (ls >> item) h.defined.push_back(split_arity(item, loc));
    } else if (key == "data:") {
      while (ls >> item) h.data.push_back(split_arity(item, loc));
    } else if (key == "spines:") {
      while (ls >> item) {
        size_t eq = item.rfind('=');
        if (eq == std::string::npos) throw ParseError(loc, "bad spine entry");
        h.spines.push_back({split_arity(item.substr(0, eq), loc),
                            std::stoi(item.substr(eq + 1))});
      }
    }
  }
}

struct RawRule {
  Term lhs;
  Term rhs;
  SourceLoc at;
};

class TrsParser {
 public:
  explicit TrsParser(std::string_view text) : lex_(text) { tok_ = lex_.next(); }

  Atrs parse() {
    std::vector<RawRule> raw;
    while (tok_.kind != Token::kEnd) {
      expect(Token::kOpen, "'('");
      SourceLoc open = tok_.loc;
      if (tok_.kind != Token::kName) fail("expected a section name");
      std::string section = tok_.text;
      if (section == "COMMENT") {
        read_header(lex_.raw_block(open), open, header_);
        tok_ = lex_.next();
      } else if (section == "VAR") {
        tok_ = lex_.next();
        while (tok_.kind == Token::kName) {
          vars_.insert(tok_.text);
          tok_ = lex_.next();
        }
        expect(Token::kClose, "')'");
      } else if (section == "RULES") {
        tok_ = lex_.next();
        while (tok_.kind != Token::kClose) {
          SourceLoc at = tok_.loc;
          Term l = term();
          expect(Token::kArrow, "'->'");
          Term r = term();
          raw.push_back(RawRule{std::move(l), std::move(r), at});
        }
        tok_ = lex_.next();
      } else {
        lex_.raw_block(open);
        tok_ = lex_.next();
      }
    }
    return build(raw);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(tok_.loc, msg);
  }

  void expect(Token::Kind k, const char* what) {
    if (tok_.kind != k) {
      fail(std::string("expected ") + what +
           (tok_.kind == Token::kEnd ? " before end of input"
                                     : ", found '" + tok_.text + "'"));
    }
    tok_ = lex_.next();
  }

  // Terms over printed names; symbols are resolved once the header is known.
  Term term() {
    if (tok_.kind != Token::kName) fail("expected a term");
    std::string name = tok_.text;
    SourceLoc loc = tok_.loc;
    tok_ = lex_.next();
    std::vector<Term> args;
    if (tok_.kind == Token::kOpen) {
      tok_ = lex_.next();
      args.push_back(term());
      while (tok_.kind == Token::kComma) {
        tok_ = lex_.next();
        args.push_back(term());
      }
      expect(Token::kClose, "')'");
    }
    if (vars_.count(name)) {
      if (!args.empty()) throw ParseError(loc, "variable " + name + " applied to arguments");
      return Term::var(name);
    }
    return Term::make(name, std::move(args));
  }

  std::string original(const std::string& printed) const {
    auto it = header_.names.find(printed);
    return it == header_.names.end() ? printed : it->second;
  }

  Term restore(const Term& t, SourceLoc at) const {
    if (t.is_var()) return t;
    std::vector<Term> args;
    for (const Term& s : t.args()) args.push_back(restore(s, at));
    std::string name = original(t.fun().name());
    if (name == "@") {
      if (args.size() != 2) throw ParseError(at, "@ needs two arguments");
      return Term::apply(args[0], args[1]);
    }
    Fun f = Fun::get(name, static_cast<int>(args.size()));
    return Term::make(f, std::move(args));
  }

  Atrs build(const std::vector<RawRule>& raw) {
    std::vector<Rule> rules;
    for (const RawRule& rr : raw) {
      try {
        rules.push_back(Rule::make(restore(rr.lhs, rr.at), restore(rr.rhs, rr.at)));
      } catch (const InvariantViolation& e) {
        throw ParseError(rr.at, e.what());
      }
    }
    Fun main;
    if (header_.main) {
      main = Fun::get(original(header_.main->first), header_.main->second);
    } else {
      for (const Rule& r : rules) {
        if (r.lhs.fun().name() == "main") main = r.lhs.fun();
      }
      if (!main.valid()) main = Fun::get("main", 0);
    }
    AtrsInfo info;
    for (const auto& [n, k] : header_.defined) {
      info.defined.insert(Fun::get(original(n), k));
    }
    for (const auto& [n, k] : header_.data) {
      info.data.insert(Fun::get(original(n), k));
    }
    for (const auto& [nk, s] : header_.spines) {
      info.spines[Fun::get(original(nk.first), nk.second)] = s;
    }
    return Atrs(std::move(rules), main, std::move(info));
  }

  Lexer lex_;
  Token tok_;
  Header header_;
  std::set<std::string> vars_;
};

}  // namespace

Atrs parse_trs(std::string_view text) { return TrsParser(text).parse(); }

}  // namespace ho2trs
