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

#include "netdp/config.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace netdp {
namespace {

absl::Status BadValue(absl::string_view key, absl::string_view value,
                      absl::string_view expected) {
  return absl::InvalidArgumentError(absl::StrCat(
      "config key '", key, "': expected ", expected, ", got '", value, "'"));
}

}  // namespace

absl::StatusOr<Config> Config::Parse(absl::string_view text) {
  Config config;
  int line_no = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_no;
    if (const size_t hash = line.find('#'); hash != absl::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    if (absl::Status s = config.SetFromString(line); !s.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("config line ", line_no, ": ", s.message()));
    }
  }
  return config;
}

absl::StatusOr<Config> Config::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::InvalidArgumentError(absl::StrCat("cannot read config ", path));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

absl::Status Config::SetFromString(absl::string_view assignment) {
  const size_t eq = assignment.find('=');
  if (eq == absl::string_view::npos) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected key = value, got '", assignment, "'"));
  }
  const absl::string_view key =
      absl::StripAsciiWhitespace(assignment.substr(0, eq));
  if (key.empty()) return absl::InvalidArgumentError("empty config key");
  Set(std::string(key),
      std::string(absl::StripAsciiWhitespace(assignment.substr(eq + 1))));
  return absl::OkStatus();
}

void Config::Set(std::string key, std::string value) {
  entries_[std::move(key)] = std::move(value);
}

bool Config::Has(absl::string_view key) const { return Find(key) != nullptr; }

const std::string* Config::Find(absl::string_view key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

void Config::Record(absl::string_view key, nlohmann::ordered_json value) {
  used_[std::string(key)] = true;
  resolved_[std::string(key)] = std::move(value);
}

absl::StatusOr<double> Config::GetDouble(absl::string_view key,
                                         double fallback) {
  double value = fallback;
  if (const std::string* raw = Find(key)) {
    if (!absl::SimpleAtod(*raw, &value) || !std::isfinite(value)) {
      return BadValue(key, *raw, "a finite number");
    }
  }
  Record(key, value);
  return value;
}

absl::StatusOr<int64_t> Config::GetInt(absl::string_view key,
                                       int64_t fallback) {
  int64_t value = fallback;
  if (const std::string* raw = Find(key)) {
    if (!absl::SimpleAtoi(*raw, &value)) {
      return BadValue(key, *raw, "an integer");
    }
  }
  Record(key, value);
  return value;
}

absl::StatusOr<bool> Config::GetBool(absl::string_view key, bool fallback) {
  bool value = fallback;
  if (const std::string* raw = Find(key)) {
    if (!absl::SimpleAtob(*raw, &value)) {
      return BadValue(key, *raw, "true or false");
    }
  }
  Record(key, value);
  return value;
}

std::string Config::GetString(absl::string_view key,
                              absl::string_view fallback) {
  const std::string* raw = Find(key);
  std::string value = raw ? *raw : std::string(fallback);
  Record(key, value);
  return value;
}

absl::StatusOr<std::vector<double>> Config::GetDoubleList(
    absl::string_view key, absl::string_view fallback) {
  const std::string* raw = Find(key);
  const absl::string_view text = raw ? absl::string_view(*raw) : fallback;
  std::vector<double> out;
  for (absl::string_view item : absl::StrSplit(text, ',', absl::SkipWhitespace())) {
    double value = 0.0;
    if (!absl::SimpleAtod(absl::StripAsciiWhitespace(item), &value) ||
        !std::isfinite(value)) {
      return BadValue(key, text, "a comma-separated list of numbers");
    }
    out.push_back(value);
  }
  Record(key, out);
  return out;
}

absl::StatusOr<std::vector<int64_t>> Config::GetIntList(
    absl::string_view key, absl::string_view fallback) {
  const std::string* raw = Find(key);
  const absl::string_view text = raw ? absl::string_view(*raw) : fallback;
  std::vector<int64_t> out;
  for (absl::string_view item : absl::StrSplit(text, ',', absl::SkipWhitespace())) {
    int64_t value = 0;
    if (!absl::SimpleAtoi(absl::StripAsciiWhitespace(item), &value)) {
      return BadValue(key, text, "a comma-separated list of integers");
    }
    out.push_back(value);
  }
  Record(key, out);
  return out;
}

absl::Status Config::CheckAllUsed() const {
  std::vector<std::string> unused;
  for (const auto& [key, value] : entries_) {
    if (!used_.contains(key)) unused.push_back(key);
  }
  if (unused.empty()) return absl::OkStatus();
  return absl::InvalidArgumentError(
      absl::StrCat("unknown config keys: ", absl::StrJoin(unused, ", ")));
}

}  // namespace netdp
