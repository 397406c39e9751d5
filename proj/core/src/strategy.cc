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

#include "ho2trs/strategy.h"

#include <cctype>

#include "ho2trs/cfa.h"
#include "ho2trs/errors.h"
#include "ho2trs/rewrite.h"
#include "ho2trs/transforms.h"

namespace ho2trs {

struct Strategy::Node {
  Kind kind;
  std::string name;
  Transform fn;
  std::vector<Strategy> kids;
};

Strategy Strategy::prim(std::string name, Transform fn) {
  return Strategy(std::make_shared<const Node>(
      Node{Kind::kPrim, std::move(name), std::move(fn), {}}));
}

Strategy Strategy::seq(Strategy a, Strategy b) {
  return Strategy(std::make_shared<const Node>(
      Node{Kind::kSeq, {}, {}, {std::move(a), std::move(b)}}));
}

Strategy Strategy::choice(Strategy a, Strategy b) {
  return Strategy(std::make_shared<const Node>(
      Node{Kind::kChoice, {}, {}, {std::move(a), std::move(b)}}));
}

Strategy Strategy::exhaustive(Strategy s) {
  return Strategy(std::make_shared<const Node>(
      Node{Kind::kExhaustive, {}, {}, {std::move(s)}}));
}

Strategy::Kind Strategy::kind() const { return node_->kind; }
const std::string& Strategy::name() const { return node_->name; }
const Transform& Strategy::transform() const { return node_->fn; }
const Strategy& Strategy::left() const { return node_->kids.at(0); }
const Strategy& Strategy::right() const { return node_->kids.at(1); }

namespace {

// 0: seq, 1: choice, 2: unary
std::string show(const Strategy& s, int prec) {
  switch (s.kind()) {
    case Strategy::Kind::kPrim:
      return s.name();
    case Strategy::Kind::kExhaustive:
      return "exhaustive " + show(s.left(), 2);
    case Strategy::Kind::kChoice: {
      std::string t = show(s.left(), 1) + " <> " + show(s.right(), 2);
      return prec > 1 ? "(" + t + ")" : t;
    }
    case Strategy::Kind::kSeq: {
      std::string t = show(s.left(), 0) + "; " + show(s.right(), 1);
      return prec > 0 ? "(" + t + ")" : t;
    }
  }
  return "?";
}

}  // namespace

std::string Strategy::str() const { return show(*this, 0); }

// Built-ins.

namespace {

Strategy inline_prim(InliningPredicate p) {
  return Strategy::prim("inline(" + predicate_name(p) + ")",
                        [p](const Atrs& a) { return inline_calls(a, p); });
}

Strategy simple_prim(const char* name, Atrs (*fn)(const Atrs&)) {
  return Strategy::prim(name,
                        [fn](const Atrs& a) -> std::optional<Atrs> {
                          return fn(a);
                        });
}

Atrs identity(const Atrs& a) { return a; }

}  // namespace

Strategy simp_atrs_strategy() {
  return Strategy::seq(
      Strategy::seq(
          Strategy::seq(Strategy::exhaustive(
                            inline_prim(InliningPredicate::kLambdaRewrite)),
                        Strategy::exhaustive(
                            inline_prim(InliningPredicate::kMatch))),
          Strategy::exhaustive(inline_prim(InliningPredicate::kConstructor))),
      simple_prim("usableRules", usable_rules_syntactic));
}

Strategy to_trs_strategy() {
  return Strategy::seq(Strategy::seq(simple_prim("cfa", cfa_transform),
                                     simple_prim("uncurry", uncurry)),
                       simple_prim("usableRules", usable_rules_syntactic));
}

Strategy simp_trs_strategy() {
  return Strategy::exhaustive(Strategy::choice(
      Strategy::seq(inline_prim(InliningPredicate::kDecreasing),
                    simple_prim("usableRules", usable_rules_syntactic)),
      simple_prim("cfaDCE", cfa_dce)));
}

Strategy simplify_strategy() {
  return Strategy::seq(Strategy::seq(simp_atrs_strategy(), to_trs_strategy()),
                       simp_trs_strategy());
}

Strategy named_strategy(std::string_view name) {
  if (name == "simplify" || name == "default") return simplify_strategy();
  if (name == "simpATRS") return simp_atrs_strategy();
  if (name == "toTRS") return to_trs_strategy();
  if (name == "simpTRS") return simp_trs_strategy();
  if (name == "usableRules") {
    return simple_prim("usableRules", usable_rules_syntactic);
  }
  if (name == "cfa") return simple_prim("cfa", cfa_transform);
  if (name == "cfaDCE") return simple_prim("cfaDCE", cfa_dce);
  if (name == "uncurry") return simple_prim("uncurry", uncurry);
  if (name == "id") return simple_prim("id", identity);
  if (name.rfind("inline(", 0) == 0 && name.back() == ')') {
    std::string_view pred = name.substr(7, name.size() - 8);
    if (auto p = parse_predicate(pred)) return inline_prim(*p);
    throw UserError("unknown inlining predicate '" + std::string(pred) + "'");
  }
  throw UserError("unknown strategy '" + std::string(name) + "'");
}

// Parsing.

namespace {

class StrategyParser {
 public:
  explicit StrategyParser(std::string_view text) : text_(text) {}

  Strategy parse() {
    Strategy s = seq();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(SourceLoc{1, static_cast<int>(pos_) + 1},
                     "strategy: " + msg);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }

  std::string ident() {
    skip();
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '-' || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a strategy name");
    return std::string(text_.substr(start, pos_ - start));
  }

  Strategy seq() {
    Strategy s = choice();
    while (eat(";")) s = Strategy::seq(s, choice());
    return s;
  }

  Strategy choice() {
    Strategy s = unary();
    while (eat("<>")) s = Strategy::choice(s, unary());
    return s;
  }

  Strategy unary() {
    skip();
    size_t save = pos_;
    if (eat("(")) {
      Strategy s = seq();
      if (!eat(")")) fail("expected ')'");
      return s;
    }
    std::string name = ident();
    if (name == "exhaustive") return Strategy::exhaustive(unary());
    if (name == "inline") {
      if (!eat("(")) fail("expected '(' after inline");
      std::string pred = ident();
      if (!eat(")")) fail("expected ')'");
      name = "inline(" + pred + ")";
    }
    try {
      return named_strategy(name);
    } catch (const UserError& e) {
      pos_ = save;
      fail(e.what());
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace

Strategy parse_strategy(std::string_view text) {
  return StrategyParser(text).parse();
}

// Evaluation.

namespace {

class Runner {
 public:
  Runner(std::vector<Stage>* stages, const RunOptions& opts)
      : stages_(stages), opts_(opts) {}

  std::optional<Atrs> run(const Strategy& s, const Atrs& a) {
    switch (s.kind()) {
      case Strategy::Kind::kPrim: {
        std::optional<Atrs> r = s.transform()(a);
        if (!r || *r == a) return std::nullopt;
        if (opts_.check_non_ambiguity) {
          AmbiguityReport rep = check_non_ambiguous(*r);
          if (!rep.ok) {
            const Overlap& o = rep.overlaps.front();
            throw AmbiguityIntroduced(s.name() + " produced overlapping rules " +
                                      r->rule(o.outer).str() + " and " +
                                      r->rule(o.inner).str());
          }
        }
        if (stages_) stages_->push_back(Stage{s.name(), *r});
        return r;
      }
      case Strategy::Kind::kSeq: {
        // Applicable when either side applied. Requiring the second step to
        // apply would let a choice discard a successful first step.
        std::optional<Atrs> r1 = run(s.left(), a);
        const Atrs& mid = r1 ? *r1 : a;
        std::optional<Atrs> r2 = run(s.right(), mid);
        if (r2) return r2;
        return r1;
      }
      case Strategy::Kind::kChoice: {
        if (auto r = run(s.left(), a)) return r;
        return run(s.right(), a);
      }
      case Strategy::Kind::kExhaustive: {
        Atrs cur = a;
        for (long n = 0;; ++n) {
          std::optional<Atrs> r = run(s.left(), cur);
          if (!r || *r == cur) break;
          if (n + 1 > opts_.exhaustive_fuel) {
            throw FuelExhausted("exhaustive " + s.left().str() +
                                " did not settle within " +
                                std::to_string(opts_.exhaustive_fuel) +
                                " iterations");
          }
          cur = std::move(*r);
        }
        return cur;
      }
    }
    return std::nullopt;
  }

 private:
  std::vector<Stage>* stages_;
  RunOptions opts_;
};

}  // namespace

std::optional<Atrs> run_strategy(const Strategy& s, const Atrs& a,
                                 std::vector<Stage>* stages,
                                 const RunOptions& opts) {
  return Runner(stages, opts).run(s, a);
}

Atrs simplify(const Atrs& a, std::vector<Stage>* stages,
              const RunOptions& opts) {
  std::optional<Atrs> r = run_strategy(simplify_strategy(), a, stages, opts);
  return r ? *r : a;
}

}  // namespace ho2trs
