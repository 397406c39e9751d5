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

#include "cli.h"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ho2trs/trs_io.h"
#include "test_support.h"

namespace ho2trs {
namespace {

using testing::corpus_file;

struct CliRun {
  int status;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = cli_main(args, out, err);
  return {status, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() /
          ("ho2trs_cli_test_" + name))
      .string();
}

TEST(CliTest, CompileWritesTheFinalSystem) {
  CliRun r = cli({"compile", corpus_file("rev")});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  Atrs a = parse_trs(r.out);
  EXPECT_EQ(a.size(), 6u);
  EXPECT_EQ(r.out, emit(testing::run_corpus("rev").final,
                        OutputFormat::kClassic));

  std::string path = temp_path("rev.trs");
  CliRun w = cli({"compile", "-o", path, corpus_file("rev")});
  ASSERT_EQ(w.status, kExitOk) << w.err;
  EXPECT_EQ(testing::read_file(path), r.out);
  std::remove(path.c_str());
}

TEST(CliTest, FormatsAndStrategies) {
  CliRun id = cli({"compile", "--strategy", "custom:id", corpus_file("rev")});
  ASSERT_EQ(id.status, kExitOk) << id.err;
  // auto picks the applicative format when @ survives.
  EXPECT_NE(id.out.find("app("), std::string::npos);
  EXPECT_EQ(parse_trs(id.out).size(), 11u);

  CliRun classic = cli({"compile", "--format", "classic", "--strategy",
                     "custom:id", corpus_file("rev")});
  EXPECT_EQ(classic.status, kExitUserError);
  EXPECT_FALSE(classic.err.empty());

  CliRun debug = cli({"compile", "--format", "debug", corpus_file("rev")});
  ASSERT_EQ(debug.status, kExitOk);
  EXPECT_NE(debug.out.find("::"), std::string::npos);

  EXPECT_EQ(cli({"compile", "--format", "xml", corpus_file("rev")}).status,
            kExitUserError);
  EXPECT_EQ(cli({"compile", "--strategy", "bogus", corpus_file("rev")}).status,
            kExitUserError);
  EXPECT_EQ(
      cli({"compile", "--strategy", "custom:id;", corpus_file("rev")}).status,
      kExitUserError);
}

TEST(CliTest, InapplicableStagesExitWithTwo) {
  CliRun r = cli({"compile", "--strategy", "custom:uncurry", corpus_file("rev")});
  EXPECT_EQ(r.status, kExitInapplicable);
  EXPECT_NE(r.err.find("head variable"), std::string::npos) << r.err;
}

TEST(CliTest, DumpsNamedSections) {
  CliRun r = cli({"compile", "--dump", "stages", corpus_file("rev")});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_NE(r.out.find("inline(lambda-rewrite)"), std::string::npos);
  EXPECT_NE(r.out.find("uncurry"), std::string::npos);
  CliRun g = cli({"compile", "--dump", "grammar", corpus_file("rev")});
  ASSERT_EQ(g.status, kExitOk) << g.err;
  EXPECT_NE(g.out.find("S -> main("), std::string::npos) << g.out;
}

TEST(CliTest, EvalAgreesAcrossStages) {
  for (const char* stage : {"pcf", "defunc", "final", "3"}) {
    CliRun r = cli({"eval", "--input", "[]::[]::[]", "--count-steps", "--stage",
                 stage, corpus_file("rev")});
    ASSERT_EQ(r.status, kExitOk) << stage << ": " << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "[]::[]::[]") << stage;
    EXPECT_NE(r.out.find("steps: "), std::string::npos);
  }
  CliRun sorted = cli({"eval", "--input", "2::0::1::[]", corpus_file("isort")});
  ASSERT_EQ(sorted.status, kExitOk) << sorted.err;
  EXPECT_EQ(sorted.out, "0::1::2::[]\n");
}

TEST(CliTest, EvalRejectsBadInputs) {
  EXPECT_EQ(cli({"eval", corpus_file("rev")}).status, kExitUserError);
  EXPECT_EQ(cli({"eval", "--input", "Foo", corpus_file("rev")}).status,
            kExitUserError);
  EXPECT_EQ(cli({"eval", "--input", "[]", "--stage", "nowhere",
                 corpus_file("rev")})
                .status,
            kExitUserError);
}

TEST(CliTest, CheckReportsEveryProperty) {
  CliRun r = cli({"check", "--inputs", "list:0..3", corpus_file("rev")});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  for (const char* p : {"simulation", "per-stage semantics", "grammar safety",
                        "non-ambiguity"}) {
    EXPECT_NE(r.out.find(p), std::string::npos) << p;
  }
  EXPECT_EQ(cli({"check", "--inputs", "bad", corpus_file("rev")}).status,
            kExitUserError);
  EXPECT_EQ(cli({"check", "--inputs", "natlist:0..2", corpus_file("rev")})
                .status,
            kExitUserError);
}

TEST(CliTest, BadFilesAndUsage) {
  EXPECT_EQ(cli({}).status, kExitUserError);
  EXPECT_EQ(cli({"compile", temp_path("missing.fp")}).status, kExitUserError);
  std::string path = temp_path("bad.fp");
  std::ofstream(path) << "let main x = y ;;\n";
  CliRun r = cli({"compile", path});
  EXPECT_EQ(r.status, kExitUserError);
  EXPECT_NE(r.err.find("1:14"), std::string::npos) << r.err;
  std::remove(path.c_str());
  EXPECT_EQ(cli({"--help"}).status, kExitOk);
}

}  // namespace
}  // namespace ho2trs
