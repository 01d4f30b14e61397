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

#ifndef NETDP_CONFIG_H_
#define NETDP_CONFIG_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "json.hpp"

namespace netdp {

// Flat `key = value` configuration. '#' starts a comment. Every getter records
// the value it resolved, defaults included, for the run metadata.
class Config {
 public:
  static absl::StatusOr<Config> Parse(absl::string_view text);
  static absl::StatusOr<Config> Load(const std::string& path);

  // Parses `key=value`.
  absl::Status SetFromString(absl::string_view assignment);
  void Set(std::string key, std::string value);
  bool Has(absl::string_view key) const;

  absl::StatusOr<double> GetDouble(absl::string_view key, double fallback);
  absl::StatusOr<int64_t> GetInt(absl::string_view key, int64_t fallback);
  absl::StatusOr<bool> GetBool(absl::string_view key, bool fallback);
  std::string GetString(absl::string_view key, absl::string_view fallback);
  // Comma-separated lists.
  absl::StatusOr<std::vector<double>> GetDoubleList(absl::string_view key,
                                                    absl::string_view fallback);
  absl::StatusOr<std::vector<int64_t>> GetIntList(absl::string_view key,
                                                  absl::string_view fallback);

  // Values as resolved so far, in first-use order.
  const nlohmann::ordered_json& resolved() const { return resolved_; }
  // Fails if some supplied key was never read.
  absl::Status CheckAllUsed() const;

 private:
  const std::string* Find(absl::string_view key) const;
  void Record(absl::string_view key, nlohmann::ordered_json value);

  std::map<std::string, std::string, std::less<>> entries_;
  std::map<std::string, bool, std::less<>> used_;
  nlohmann::ordered_json resolved_ = nlohmann::ordered_json::object();
};

}  // namespace netdp

#endif  // NETDP_CONFIG_H_
