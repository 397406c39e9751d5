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

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "ho2trs/cfa.h"
#include "ho2trs/defunctionalize.h"
#include "ho2trs/errors.h"
#include "ho2trs/pcf.h"
#include "ho2trs/rewrite.h"
#include "ho2trs/strategy.h"
#include "ho2trs/trs_io.h"

namespace ho2trs {

namespace {

long env_long(const char* name, long fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n <= 0) {
    throw UserError(std::string(name) + " must be a positive integer");
  }
  return n;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UserError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Strategy strategy_from_flag(const std::string& flag) {
  if (flag.empty() || flag == "default") return simplify_strategy();
  if (flag.rfind("custom:", 0) == 0) return parse_strategy(flag.substr(7));
  return parse_strategy(flag);
}

struct Compilation {
  Program program;
  Atrs defunc;
  std::vector<Stage> stages;
  Atrs final;

  // The system stage k (1-based) received; stage 0 is the defunctionalized
  // system.
  const Atrs& before(size_t k) const {
    return k <= 1 ? defunc : stages[k - 2].atrs;
  }
};

Compilation compile_file(const std::string& path, const std::string& strategy) {
  Compilation c;
  c.program = parse_program(read_file(path));
  infer_types(c.program);
  c.defunc = defunctionalize(c.program);
  RunOptions opts;
  opts.exhaustive_fuel = env_long("HO2TRS_EXHAUSTIVE_FUEL", kExhaustiveFuel);
  std::optional<Atrs> r =
      run_strategy(strategy_from_flag(strategy), c.defunc, &c.stages, opts);
  c.final = r ? *r : c.defunc;
  return c;
}

// Index (1-based) of the first stage produced by cfa, or 0.
size_t first_cfa_stage(const Compilation& c) {
  for (size_t k = 0; k < c.stages.size(); ++k) {
    if (c.stages[k].name == "cfa") return k + 1;
  }
  return 0;
}

OutputFormat choose_format(const std::string& flag, const Atrs& a) {
  if (flag.empty() || flag == "auto") {
    return a.uses_application() ? OutputFormat::kApplicative
                                : OutputFormat::kClassic;
  }
  auto f = parse_format(flag);
  if (!f) throw UserError("unknown format '" + flag + "'");
  return *f;
}

void dump(const Compilation& c, const std::string& what, OutputFormat fmt,
          std::ostream& out) {
  auto section = [&](const std::string& title) {
    out << "; ---- " << title << "\n";
  };
  auto system = [&](const Atrs& a) {
    out << emit(a, a.uses_application() && fmt == OutputFormat::kClassic
                       ? OutputFormat::kApplicative
                       : fmt);
  };
  if (what == "pcf") {
    section("pcf");
    out << print_program(c.program);
  } else if (what == "defunc") {
    section("defunc");
    system(c.defunc);
  } else if (what == "grammar") {
    size_t k = first_cfa_stage(c);
    const Atrs& in = k ? c.before(k) : c.final;
    section(k ? "grammar (input of cfa)" : "grammar (final system)");
    out << build_grammar(in).str();
  } else if (what == "final") {
    section("final");
    system(c.final);
  } else if (what == "stages" || what == "all") {
    if (what == "all") {
      dump(c, "pcf", fmt, out);
      dump(c, "defunc", fmt, out);
    }
    for (size_t k = 0; k < c.stages.size(); ++k) {
      section(std::to_string(k + 1) + " " + c.stages[k].name);
      system(c.stages[k].atrs);
    }
    if (what == "all") dump(c, "grammar", fmt, out);
  } else {
    bool any = false;
    for (size_t k = 0; k < c.stages.size(); ++k) {
      if (c.stages[k].name != what) continue;
      section(std::to_string(k + 1) + " " + c.stages[k].name);
      system(c.stages[k].atrs);
      any = true;
    }
    if (!any) throw UserError("no stage named '" + what + "'");
  }
}

// Input generation for `check`.

struct GenSpec {
  std::string kind;
  int lo = 0;
  int hi = 0;
};

std::vector<GenSpec> parse_gen_spec(const std::string& text) {
  std::vector<GenSpec> out;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    size_t colon = part.find(':');
    size_t dots = part.find("..");
    if (colon == std::string::npos || dots == std::string::npos || dots < colon) {
      throw UserError("bad input spec '" + part +
                      "'; expected kind:lo..hi with kind list, nat or natlist");
    }
    GenSpec g;
    g.kind = part.substr(0, colon);
    try {
      g.lo = std::stoi(part.substr(colon + 1, dots - colon - 1));
      g.hi = std::stoi(part.substr(dots + 2));
    } catch (const std::exception&) {
      throw UserError("bad size range in '" + part + "'");
    }
    if (g.kind != "list" && g.kind != "nat" && g.kind != "natlist") {
      throw UserError("unknown input kind '" + g.kind + "'");
    }
    if (g.lo < 0 || g.hi < g.lo) throw UserError("bad size range in '" + part + "'");
    out.push_back(g);
  }
  if (out.empty()) throw UserError("empty input spec");
  return out;
}

Term nat(int n) {
  Term t = Term::constant("Z");
  for (int i = 0; i < n; ++i) t = Term::make("S", {t});
  return t;
}

Term make_input(const GenSpec& g, int n) {
  if (g.kind == "nat") return nat(n);
  Term t = Term::constant("[]");
  for (int i = n; i-- > 0;) {
    Term x = g.kind == "list" ? Term::constant("[]") : nat((i * 7 + 3) % 5);
    t = Term::make("::", {x, t});
  }
  return t;
}

void require_constructors(const Term& t, const Program& p) {
  if (t.is_var()) return;
  const ConDecl* c = p.find_constructor(t.fun().name());
  if (!c || c->arity != t.fun().arity()) {
    throw UserError("generated input uses " + t.fun().name() +
                    ", which the program does not declare");
  }
  for (const Term& s : t.args()) require_constructors(s, p);
}

std::vector<std::vector<Term>> generate_inputs(const std::vector<GenSpec>& spec,
                                               const Program& p) {
  if (spec.size() != p.params.size()) {
    throw UserError("main takes " + std::to_string(p.params.size()) +
                    " arguments but the input spec describes " +
                    std::to_string(spec.size()));
  }
  std::vector<std::vector<Term>> acc{{}};
  for (const GenSpec& g : spec) {
    std::vector<std::vector<Term>> next;
    for (const auto& pre : acc) {
      for (int n = g.lo; n <= g.hi; ++n) {
        auto v = pre;
        v.push_back(make_input(g, n));
        require_constructors(v.back(), p);
        next.push_back(std::move(v));
      }
    }
    acc = std::move(next);
  }
  return acc;
}

struct CheckRow {
  std::string property;
  long checks = 0;
  long failures = 0;
  std::string first_failure;

  void record(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures++ == 0) first_failure = what;
  }
};

std::string args_str(const std::vector<Term>& in) {
  std::string s;
  for (const Term& t : in) s += (s.empty() ? "" : ", ") + to_string(t);
  return s;
}

int run_check(const Compilation& c, const std::vector<std::vector<Term>>& inputs,
              long fuel, std::ostream& out) {
  CheckRow sim{"simulation (pcf steps = defunc steps)", 0, 0, {}};
  CheckRow sem{"per-stage semantics", 0, 0, {}};
  CheckRow rel{"per-stage step relations", 0, 0, {}};
  CheckRow safety{"grammar safety", 0, 0, {}};
  CheckRow amb{"non-ambiguity", 0, 0, {}};

  amb.record(check_non_ambiguous(c.defunc).ok, "defunc");
  for (const Stage& s : c.stages) amb.record(check_non_ambiguous(s.atrs).ok, s.name);

  size_t cfa_k = first_cfa_stage(c);
  std::optional<TreeGrammar> grammar;
  std::set<int> dead;
  if (cfa_k) {
    grammar = build_grammar(c.before(cfa_k));
    dead = dead_rules(*grammar, c.before(cfa_k));
  }
  std::optional<GrammarOracle> oracle;
  if (grammar) oracle.emplace(*grammar);

  for (const auto& in : inputs) {
    std::string label = "main(" + args_str(in) + ")";
    EvalResult pe = pcf_eval(c.program, in, fuel);
    Term start = Term::make(c.defunc.main(), in);
    Count prev = count_steps(c.defunc, start, fuel);
    sim.record(pe.steps == prev.length && pe.value == prev.normal_form,
               label + ": pcf " + std::to_string(pe.steps) + " steps, defunc " +
                   std::to_string(prev.length));
    for (size_t k = 1; k <= c.stages.size(); ++k) {
      const Stage& s = c.stages[k - 1];
      Count cur = count_steps(s.atrs, start, fuel);
      sem.record(cur.normal_form == prev.normal_form,
                 label + " at stage " + std::to_string(k) + " " + s.name);
      bool ok = true;
      if (s.name.rfind("inline(", 0) == 0) {
        ok = prev.length <= 2 * cur.length + 2;
      } else {
        ok = prev.length == cur.length;
      }
      rel.record(ok, label + " at stage " + std::to_string(k) + " " + s.name +
                         ": " + std::to_string(prev.length) + " -> " +
                         std::to_string(cur.length));
      prev = cur;
    }
    if (grammar) {
      const Atrs& a = c.before(cfa_k);
      Trace tr = normalize(a, start, fuel);
      for (const Step& st : tr.steps) {
        bool ok = !dead.count(st.rule);
        for (const std::string& x : vars(a.rule(st.rule).lhs)) {
          auto it = st.sigma.find(x);
          ok = ok && it != st.sigma.end() &&
               oracle->generates(NonTerminal::var_nt(x, st.rule), it->second);
        }
        safety.record(ok, label + ": rule " + a.rule(st.rule).str());
      }
    }
  }

  std::vector<CheckRow*> rows{&sim, &sem, &rel, &safety, &amb};
  out << std::left << std::setw(40) << "property" << std::setw(10) << "checks"
      << "failures\n";
  bool all_ok = true;
  for (CheckRow* r : rows) {
    out << std::left << std::setw(40) << r->property << std::setw(10)
        << r->checks << r->failures << "\n";
    all_ok = all_ok && r->failures == 0;
  }
  for (CheckRow* r : rows) {
    if (r->failures) out << "first failure in " << r->property << ": " << r->first_failure << "\n";
  }
  if (!cfa_k) out << "note: the strategy has no cfa stage; grammar safety not checked\n";
  return all_ok ? kExitOk : kExitInvariant;
}

const Atrs* stage_by_name(const Compilation& c, const std::string& name) {
  if (name == "defunc") return &c.defunc;
  if (name == "final") return &c.final;
  if (!name.empty() && std::all_of(name.begin(), name.end(), ::isdigit)) {
    size_t k = std::stoul(name);
    if (k == 0) return &c.defunc;
    if (k <= c.stages.size()) return &c.stages[k - 1].atrs;
    return nullptr;
  }
  for (size_t k = c.stages.size(); k-- > 0;) {
    if (c.stages[k].name == name) return &c.stages[k].atrs;
  }
  return nullptr;
}

int dispatch(const std::vector<std::string>& argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Translates higher-order functional programs into first-order "
               "term rewrite systems"};
  app.name("ho2trs");
  app.require_subcommand(1);

  std::string file, output, strategy = "default", format = "auto";
  std::vector<std::string> dumps;
  auto* compile = app.add_subcommand("compile", "Compile a program to a TRS");
  compile->add_option("file", file, "Source program (.fp)")->required();
  compile->add_option("-o,--output", output, "Write the TRS here");
  compile->add_option("--strategy", strategy,
                      "default, or custom:<expr> such as "
                      "'custom:simpATRS; toTRS'");
  compile->add_option("--dump", dumps,
                      "pcf, defunc, grammar, stages, final, all or a stage "
                      "name; repeatable");
  compile->add_option("--format", format, "auto, classic, applicative or debug");

  std::vector<std::string> inputs;
  std::string stage = "final";
  bool count = false;
  auto* eval = app.add_subcommand("eval", "Evaluate main on data inputs");
  eval->add_option("file", file, "Source program (.fp)")->required();
  // One value per flag: CLI11 would split a bracketed value such as
  // []::[] as a list.
  eval->add_option("--input", inputs, "A data term such as 1::2::[]; one per "
                                      "parameter of main")
      ->allow_extra_args(false);
  eval->add_flag("--count-steps", count, "Print the number of steps");
  eval->add_option("--stage", stage,
                   "pcf, defunc, final, a stage number or a stage name");
  eval->add_option("--strategy", strategy, "As for compile");

  std::string gen = "list:0..8";
  auto* check = app.add_subcommand("check", "Run the invariant suite");
  check->add_option("file", file, "Source program (.fp)")->required();
  check->add_option("--inputs", gen,
                    "Comma-separated kind:lo..hi per parameter, kind one of "
                    "list, nat, natlist");
  check->add_option("--strategy", strategy, "As for compile");

  std::vector<std::string> rev(argv.rbegin(), argv.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUserError;
  }

  long fuel = env_long("HO2TRS_FUEL", kDefaultFuel);
  if (*compile) {
    Compilation c = compile_file(file, strategy);
    OutputFormat fmt = choose_format(format, c.final);
    for (const std::string& d : dumps) dump(c, d, fmt, out);
    std::string text = emit(c.final, fmt);
    if (output.empty()) {
      out << text;
    } else {
      std::ofstream f(output, std::ios::binary);
      if (!f) throw UserError("cannot write " + output);
      f << text;
    }
    return kExitOk;
  }
  if (*eval) {
    Compilation c = compile_file(file, strategy);
    std::vector<Term> in;
    for (const std::string& s : inputs) in.push_back(parse_data_term(s, c.program));
    if (in.size() != c.program.params.size()) {
      throw UserError("main takes " + std::to_string(c.program.params.size()) +
                      " inputs, got " + std::to_string(in.size()));
    }
    if (stage == "pcf") {
      EvalResult r = pcf_eval(c.program, in, fuel);
      out << to_string(r.value) << "\n";
      if (count) out << "steps: " << r.steps << "\n";
      return kExitOk;
    }
    const Atrs* a = stage_by_name(c, stage);
    if (!a) throw UserError("no stage '" + stage + "'");
    Count r = count_steps(*a, Term::make(a->main(), in), fuel);
    out << to_string(r.normal_form) << "\n";
    if (count) out << "steps: " << r.length << "\n";
    return kExitOk;
  }
  Compilation c = compile_file(file, strategy);
  return run_check(c, generate_inputs(parse_gen_spec(gen), c.program), fuel,
                   out);
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const UserError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const FormatConstraintViolated& e) {
    err << "error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const PipelineInapplicable& e) {
    err << "inapplicable: " << e.what() << "\n";
    return kExitInapplicable;
  } catch (const GrammarFuelExhausted& e) {
    err << "internal error: " << e.what() << "\npartial grammar:\n"
        << e.partial().str();
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
}

}  // namespace ho2trs
