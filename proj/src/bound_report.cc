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

#include "netdp/bound_report.h"

#include <charconv>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"

namespace netdp {
namespace {

double Lookup(const BoundReport::Fields& fields, absl::string_view key) {
  for (const auto& [k, v] : fields) {
    if (k == key) return v;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

nlohmann::ordered_json FieldsToJson(const BoundReport::Fields& fields) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& [k, v] : fields) out[k] = v;
  return out;
}

}  // namespace

BoundReport& BoundReport::AddInput(std::string key, double value) {
  inputs.emplace_back(std::move(key), value);
  return *this;
}

BoundReport& BoundReport::AddIntermediate(std::string key, double value) {
  intermediates.emplace_back(std::move(key), value);
  return *this;
}

double BoundReport::input(absl::string_view key) const {
  return Lookup(inputs, key);
}

double BoundReport::intermediate(absl::string_view key) const {
  return Lookup(intermediates, key);
}

bool BoundReport::has_intermediate(absl::string_view key) const {
  return !std::isnan(Lookup(intermediates, key));
}

nlohmann::ordered_json ToJson(const BoundReport& report) {
  nlohmann::ordered_json out;
  out["name"] = report.name;
  out["inputs"] = FieldsToJson(report.inputs);
  out["epsilon_out"] = report.epsilon_out;
  out["delta_out"] = report.delta_out;
  out["intermediates"] = FieldsToJson(report.intermediates);
  out["variant"] = report.variant;
  out["outside_validity"] = report.outside_validity;
  return out;
}

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string CsvHeader(const BoundReport& report) {
  std::string out = "name,epsilon,delta,variant,unchecked";
  for (const auto& [k, v] : report.inputs) absl::StrAppend(&out, ",", k);
  for (const auto& [k, v] : report.intermediates) absl::StrAppend(&out, ",", k);
  return out;
}

std::string CsvRow(const BoundReport& report) {
  std::string out = absl::StrCat(report.name, ",",
                                 FormatDouble(report.epsilon_out), ",",
                                 FormatDouble(report.delta_out), ",",
                                 report.variant, ",",
                                 report.outside_validity ? "true" : "false");
  for (const auto& [k, v] : report.inputs) {
    absl::StrAppend(&out, ",", FormatDouble(v));
  }
  for (const auto& [k, v] : report.intermediates) {
    absl::StrAppend(&out, ",", FormatDouble(v));
  }
  return out;
}

}  // namespace netdp
