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

// Reading and writing rule sets in the (VAR ...)(RULES ...) exchange format.

#ifndef HO2TRS_TRS_IO_H_
#define HO2TRS_TRS_IO_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "ho2trs/atrs.h"

namespace ho2trs {

enum class OutputFormat {
  // Prefix notation, application-free systems only.
  kClassic,
  // Like kClassic, with @ written as the binary symbol `app`.
  kApplicative,
  // Infix rules as printed by Atrs::str. Not parseable.
  kDebug,
};

std::optional<OutputFormat> parse_format(std::string_view name);
std::string format_name(OutputFormat f);

// Display names used by the exchange formats: `::` -> Cons, `[]` -> Nil,
// brackets and other punctuation -> `_`. Collisions get _2, _3, ... in
// order of the original names.
std::map<Fun, std::string> display_names(const Atrs& a, OutputFormat f);

// Deterministic text. A comment header records main, the name map, defined
// symbols without rules and the data constructors, so parse_trs restores
// the original symbols. Throws FormatConstraintViolated for kClassic on a
// system that uses @.
std::string emit(const Atrs& a, OutputFormat f);

// Inverse of emit for kClassic and kApplicative. Without a header, symbols
// keep their printed names, `main` is the main symbol and `app` of arity 2
// is read as @ only in files that map it. Throws ParseError.
Atrs parse_trs(std::string_view text);

}  // namespace ho2trs

#endif  // HO2TRS_TRS_IO_H_
