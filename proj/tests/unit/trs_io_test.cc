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

#include <gtest/gtest.h>

#include "ho2trs/errors.h"
#include "test_support.h"

namespace ho2trs {
namespace {

using testing::corpus;
using testing::read_file;
using testing::run_corpus;

OutputFormat format_for(const Atrs& a) {
  return a.uses_application() ? OutputFormat::kApplicative
                              : OutputFormat::kClassic;
}

void expect_same_system(const Atrs& a, const Atrs& b, const std::string& ctx) {
  EXPECT_EQ(a, b) << ctx;
  // Definedness only travels for symbols that occur.
  for (Fun f : a.funs()) EXPECT_EQ(a.is_defined(f), b.is_defined(f)) << ctx;
  EXPECT_EQ(a.data_constructors(), b.data_constructors()) << ctx;
  for (const auto& [f, n] : a.info().spines) {
    auto it = b.info().spines.find(f);
    // Spines of symbols that left the rules are not kept.
    if (it != b.info().spines.end()) EXPECT_EQ(it->second, n) << ctx;
  }
}

TEST(TrsIoTest, EveryStageRoundTrips) {
  for (const auto& cp : corpus()) {
    testing::Pipeline p = run_corpus(cp.name);
    std::vector<const Atrs*> systems{&p.defunc};
    for (const Stage& s : p.stages) systems.push_back(&s.atrs);
    for (const Atrs* a : systems) {
      std::string text = emit(*a, format_for(*a));
      Atrs back = parse_trs(text);
      expect_same_system(*a, back, cp.name + "\n" + text);
      EXPECT_EQ(emit(back, format_for(back)), text);
    }
    // The final system is application-free, so both formats apply.
    Atrs viaapp = parse_trs(emit(p.final, OutputFormat::kApplicative));
    expect_same_system(p.final, viaapp, cp.name);
  }
}

TEST(TrsIoTest, ClassicRejectsApplication) {
  Atrs a = run_corpus("rev").defunc;
  ASSERT_TRUE(a.uses_application());
  EXPECT_THROW(emit(a, OutputFormat::kClassic), FormatConstraintViolated);
  EXPECT_NE(emit(a, OutputFormat::kApplicative).find("app("),
            std::string::npos);
}

TEST(TrsIoTest, DisplayNamesAreSanitizedAndDistinct) {
  Atrs a = run_corpus("rev").final;
  auto names = display_names(a, OutputFormat::kClassic);
  EXPECT_EQ(names.at(Fun::get("::", 2)), "Cons");
  EXPECT_EQ(names.at(Fun::get("[]", 0)), "Nil");
  EXPECT_EQ(names.at(Fun::get("fix[walk]u", 1)), "fix_walk_u");
  EXPECT_EQ(names.at(Fun::get("main", 1)), "main");
  EXPECT_EQ(display_names(a, OutputFormat::kDebug).at(Fun::get("::", 2)),
            "::");

  // f[x] sanitizes to f_x, which is taken. Variables are renamed away from
  // symbol names when the system is built, so the constant x keeps its name.
  Term x = Term::var("x");
  Atrs clash(
      {Rule::make(Term::make("main", {x}),
                  Term::make("f_x", {Term::make("f[x]", {x})})),
       Rule::make(Term::make("f_x", {x}), Term::constant("x")),
       Rule::make(Term::make("f[x]", {x}), x)},
      Fun::get("main", 1));
  auto n = display_names(clash, OutputFormat::kClassic);
  EXPECT_EQ(n.at(Fun::get("f_x", 1)), "f_x");
  EXPECT_EQ(n.at(Fun::get("f[x]", 1)), "f_x_2");
  EXPECT_EQ(n.at(Fun::get("x", 0)), "x");
  EXPECT_NE(clash.rule(0).lhs.arg(0).var_name(), "x");
  std::set<std::string> distinct;
  for (const auto& [f, s] : n) distinct.insert(s);
  EXPECT_EQ(distinct.size(), n.size());
  expect_same_system(clash, parse_trs(emit(clash, OutputFormat::kClassic)),
                     "clash");
}

TEST(TrsIoTest, EmptySystems) {
  Atrs a({}, Fun::get("main", 1));
  std::string text = emit(a, OutputFormat::kClassic);
  EXPECT_NE(text.find("(RULES)"), std::string::npos) << text;
  Atrs back = parse_trs(text);
  EXPECT_EQ(back.size(), 0u);
  EXPECT_EQ(back.main(), a.main());
}

TEST(TrsIoTest, ParseErrorsCarryLocations) {
  struct Case {
    const char* text;
    int line;
  };
  for (const Case& c : {
           Case{"(VAR x)\n(RULES\n  f(x -> x\n)\n", 3},
           Case{"(VAR x)\n(RULES\n  f(x) x\n)\n", 3},
           Case{"(VAR x)\n(RULES\n  f(x) -> g(y)\n  x(a) -> a\n)\n", 4},
           Case{"(VAR x y)\n(RULES\n  f(x) -> y\n)\n", 3},
           Case{"(RULES\n  f(a) -> a\n", 3},
       }) {
    try {
      parse_trs(c.text);
      ADD_FAILURE() << "accepted:\n" << c.text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.loc().line, c.line) << e.what();
    }
  }
}

TEST(TrsIoTest, HeaderlessFiles) {
  Atrs a = parse_trs(
      "(VAR x y)\n(RULES\n  main(x) -> add(x,Z)\n"
      "  add(Z,y) -> y\n  add(S(x),y) -> S(add(x,y))\n)\n");
  EXPECT_EQ(a.main(), Fun::get("main", 1));
  EXPECT_EQ(a.size(), 3u);
  EXPECT_TRUE(a.is_defined(Fun::get("add", 2)));
  EXPECT_TRUE(a.is_constructor(Fun::get("S", 1)));
  EXPECT_FALSE(a.uses_application());
  // Without a name map `app` is an ordinary symbol.
  Atrs b = parse_trs("(VAR x)\n(RULES\n  main(x) -> app(x,x)\n)\n");
  EXPECT_FALSE(b.uses_application());
}

TEST(TrsIoTest, GoldenFilesLoad) {
  Atrs r = parse_trs(read_file(std::string(HO2TRS_GOLDEN_DIR) + "/r_rev.trs"));
  EXPECT_EQ(r.size(), 6u);
  EXPECT_EQ(r.main(), Fun::get("main", 1));
  EXPECT_TRUE(r.is_constructor(Fun::get("::", 2)));
  EXPECT_TRUE(r.is_defined(Fun::get("C1u", 3)));
  Atrs a = parse_trs(read_file(std::string(HO2TRS_GOLDEN_DIR) + "/a_rev.trs"));
  EXPECT_EQ(a.size(), 11u);
  EXPECT_TRUE(a.uses_application());
}

TEST(TrsIoTest, FormatNames) {
  for (OutputFormat f : {OutputFormat::kClassic, OutputFormat::kApplicative,
                         OutputFormat::kDebug}) {
    EXPECT_EQ(parse_format(format_name(f)), f);
  }
  EXPECT_FALSE(parse_format("xml"));
  Atrs a = run_corpus("rev").final;
  EXPECT_EQ(emit(a, OutputFormat::kDebug), emit(a, OutputFormat::kDebug));
  EXPECT_NE(emit(a, OutputFormat::kDebug).find("::"), std::string::npos);
}

}  // namespace
}  // namespace ho2trs
