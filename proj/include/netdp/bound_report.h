// Copyright 2026 The netdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NETDP_BOUND_REPORT_H_
#define NETDP_BOUND_REPORT_H_

#include <string>
#include <utility>
#include <vector>

#include "absl/strings/string_view.h"
#include "json.hpp"

namespace netdp {

// A named evaluation of one closed-form bound. Inputs and intermediates keep
// insertion order so serialized output is stable.
struct BoundReport {
  using Fields = std::vector<std::pair<std::string, double>>;

  std::string name;
  Fields inputs;
  double epsilon_out = 0.0;
  double delta_out = 0.0;
  Fields intermediates;
  // Which formula produced epsilon_out, e.g. "exact" or "simplified".
  std::string variant = "exact";
  // Set when a validity window was bypassed with an unchecked flag.
  bool outside_validity = false;

  BoundReport& AddInput(std::string key, double value);
  BoundReport& AddIntermediate(std::string key, double value);

  // NaN when the key is absent.
  double input(absl::string_view key) const;
  double intermediate(absl::string_view key) const;
  bool has_intermediate(absl::string_view key) const;
};

nlohmann::ordered_json ToJson(const BoundReport& report);

// Flat CSV: name,epsilon,delta,variant,unchecked, then inputs and
// intermediates in order.
std::string CsvHeader(const BoundReport& report);
std::string CsvRow(const BoundReport& report);

// Shortest round-trippable decimal form of `value`.
std::string FormatDouble(double value);

}  // namespace netdp

#endif  // NETDP_BOUND_REPORT_H_
