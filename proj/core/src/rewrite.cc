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

#include "ho2trs/rewrite.h"

#include <random>

namespace ho2trs {

RuleIndex::RuleIndex(const Atrs& a) : atrs_(&a) {
  for (const Rule& r : a.rules()) {
    Fun root = r.lhs.fun();
    if (root.is_app()) {
      const Term& head = r.lhs.arg(0);
      if (head.is_var()) {
        app_var_head_.push_back(r.index);
      } else {
        app_by_head_[head.fun()].push_back(r.index);
      }
    }
    by_root_[root].push_back(r.index);
  }
}

const std::vector<int>& RuleIndex::candidates(const Term& t) const {
  if (t.is_app() && app_var_head_.empty()) {
    const Term& head = t.arg(0);
    if (head.is_var()) return empty_;
    auto it = app_by_head_.find(head.fun());
    return it == app_by_head_.end() ? empty_ : it->second;
  }
  auto it = by_root_.find(t.fun());
  return it == by_root_.end() ? empty_ : it->second;
}

std::optional<Redex> RuleIndex::match_root(const Term& t) const {
  for (int i : candidates(t)) {
    if (auto s = match(atrs_->rule(i).lhs, t)) {
      return Redex{i, {}, std::move(*s)};
    }
  }
  return std::nullopt;
}

void RuleIndex::match_root_all(const Term& t, const Position& pos,
                               std::vector<Redex>& out) const {
  for (int i : candidates(t)) {
    if (auto s = match(atrs_->rule(i).lhs, t)) {
      out.push_back(Redex{i, pos, std::move(*s)});
    }
  }
}

namespace {

enum class Scan { kValue, kStuck, kFound };

// Post-order search. Values are never entered twice: the status of each
// child is computed once on the way up.
Scan find_first(const RuleIndex& idx, const Atrs& a, const Term& t,
                Position& pos, std::optional<Redex>& out) {
  if (t.is_var()) return Scan::kStuck;
  bool all_values = true;
  const auto& args = t.args();
  for (size_t i = 0; i < args.size(); ++i) {
    pos.push_back(static_cast<int>(i) + 1);
    Scan s = find_first(idx, a, args[i], pos, out);
    if (s == Scan::kFound) return s;
    pos.pop_back();
    if (s != Scan::kValue) all_values = false;
  }
  if (!a.is_defined(t.fun())) {
    return all_values ? Scan::kValue : Scan::kStuck;
  }
  if (!all_values) return Scan::kStuck;
  if (auto r = idx.match_root(t)) {
    r->pos = pos;
    out = std::move(r);
    return Scan::kFound;
  }
  return Scan::kStuck;
}

Scan find_all(const RuleIndex& idx, const Atrs& a, const Term& t,
              Position& pos, std::vector<Redex>& out) {
  if (t.is_var()) return Scan::kStuck;
  bool all_values = true;
  const auto& args = t.args();
  for (size_t i = 0; i < args.size(); ++i) {
    pos.push_back(static_cast<int>(i) + 1);
    Scan s = find_all(idx, a, args[i], pos, out);
    pos.pop_back();
    if (s != Scan::kValue) all_values = false;
  }
  if (!a.is_defined(t.fun())) {
    return all_values ? Scan::kValue : Scan::kStuck;
  }
  if (!all_values) return Scan::kStuck;
  size_t before = out.size();
  idx.match_root_all(t, pos, out);
  return out.size() > before ? Scan::kFound : Scan::kStuck;
}

}  // namespace

std::vector<Redex> cbv_redexes(const Atrs& a, const Term& t) {
  RuleIndex idx(a);
  std::vector<Redex> out;
  Position pos;
  find_all(idx, a, t, pos, out);
  return out;
}

std::optional<Redex> leftmost_innermost(const RuleIndex& idx, const Atrs& a,
                                        const Term& t) {
  std::optional<Redex> out;
  Position pos;
  find_first(idx, a, t, pos, out);
  return out;
}

std::optional<Redex> leftmost_innermost(const Atrs& a, const Term& t) {
  return leftmost_innermost(RuleIndex(a), a, t);
}

Term contract(const Atrs& a, const Term& t, const Redex& r) {
  return replace_at(t, r.pos, apply_subst(a.rule(r.rule).rhs, r.sigma));
}

Trace normalize(const Atrs& a, const Term& t, long fuel, Policy policy,
                uint64_t seed) {
  RuleIndex idx(a);
  std::mt19937_64 rng(seed);
  Trace trace;
  trace.start = t;
  Term cur = t;
  for (;;) {
    std::optional<Redex> r;
    if (policy == Policy::kLeftmostInnermost) {
      r = leftmost_innermost(idx, a, cur);
    } else {
      std::vector<Redex> all;
      Position pos;
      find_all(idx, a, cur, pos, all);
      if (!all.empty()) {
        std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
        r = std::move(all[pick(rng)]);
      }
    }
    if (!r) break;
    if (static_cast<long>(trace.steps.size()) >= fuel) {
      trace.normal_form = cur;
      throw TraceFuelExhausted(
          "normalization ran out of fuel after " + std::to_string(fuel) +
              " steps",
          std::move(trace));
    }
    cur = contract(a, cur, *r);
    trace.steps.push_back(Step{r->rule, std::move(r->pos),
                               std::move(r->sigma), cur});
  }
  trace.normal_form = cur;
  return trace;
}

Count count_steps(const Atrs& a, const Term& t, long fuel) {
  RuleIndex idx(a);
  Count c;
  Term cur = t;
  while (auto r = leftmost_innermost(idx, a, cur)) {
    if (c.length >= fuel) {
      Trace partial;
      partial.start = t;
      partial.normal_form = cur;
      throw TraceFuelExhausted("normalization ran out of fuel after " +
                                   std::to_string(fuel) + " steps",
                               std::move(partial));
    }
    cur = contract(a, cur, *r);
    ++c.length;
  }
  c.normal_form = cur;
  return c;
}

AmbiguityReport check_non_ambiguous(const Atrs& a) {
  AmbiguityReport rep;
  const auto& rules = a.rules();
  for (const Rule& outer : rules) {
    std::set<std::string> avoid;
    collect_vars(outer.lhs, avoid);
    for (const Position& p : fun_positions(outer.lhs)) {
      const Term& sub = subterm_at(outer.lhs, p);
      for (const Rule& inner : rules) {
        if (inner.index == outer.index && p.empty()) continue;
        if (!inner.lhs.is_var() && !sub.is_var() &&
            inner.lhs.fun() != sub.fun()) {
          continue;
        }
        FreshSupply fresh(avoid);
        Term renamed = fresh.rename(inner.lhs);
        if (unify(sub, renamed)) {
          rep.ok = false;
          rep.overlaps.push_back(Overlap{outer.index, inner.index, p});
        }
      }
    }
  }
  return rep;
}

}  // namespace ho2trs
