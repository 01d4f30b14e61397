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

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "netdp/config.h"
#include "netdp/experiments.h"

namespace {

constexpr int kExitInvalidConfig = 2;
constexpr int kExitInfeasible = 3;

int ExitCodeFor(const absl::Status& status) {
  return status.code() == absl::StatusCode::kFailedPrecondition
             ? kExitInfeasible
             : kExitInvalidConfig;
}

std::string Timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y%m%dT%H%M%SZ", &utc);
  return buffer;
}

bool WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Token-walk network DP simulations and privacy accounting"};
  std::string experiment;
  std::string config_path;
  uint64_t seed = 0;
  int64_t runs = 0;
  std::string out_dir = "results";
  int workers = 1;
  bool unchecked = false;
  std::vector<std::string> overrides;
  app.add_option("--experiment", experiment,
                 "bounds_sweep, empirical_sweep, protocol_mc, sgd_compare or "
                 "sigma_search")
      ->required();
  app.add_option("--config", config_path, "key = value config file");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--runs", runs, "runs or seeds; overrides the config");
  app.add_option("--out", out_dir, "output root");
  app.add_option("--workers", workers, "worker threads")
      ->check(CLI::PositiveNumber);
  app.add_flag("--unchecked", unchecked,
               "evaluate bounds outside their validity windows, tagging rows");
  app.add_option("--set", overrides, "config override key=value");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalidConfig;
  }

  netdp::Config config;
  if (!config_path.empty()) {
    auto loaded = netdp::Config::Load(config_path);
    if (!loaded.ok()) {
      std::cerr << loaded.status().message() << "\n";
      return kExitInvalidConfig;
    }
    config = *std::move(loaded);
  }
  for (const std::string& assignment : overrides) {
    if (absl::Status s = config.SetFromString(assignment); !s.ok()) {
      std::cerr << s.message() << "\n";
      return kExitInvalidConfig;
    }
  }

  netdp::ExperimentOptions options{seed, runs, workers, unchecked};
  auto result = netdp::RunExperiment(experiment, config, options);
  const std::filesystem::path dir = std::filesystem::path(out_dir) /
                                    experiment /
                                    absl::StrCat(Timestamp(), "-", seed);
  if (!result.ok()) {
    const int code = ExitCodeFor(result.status());
    nlohmann::ordered_json error;
    error["error"] = code == kExitInfeasible ? "infeasible" : "invalid_config";
    error["message"] = std::string(result.status().message());
    std::cerr << error.dump() << "\n";
    if (code == kExitInfeasible) {
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      if (!ec) WriteFile(dir / "error.json", error.dump(2) + "\n");
    }
    return code;
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::cerr << "cannot create " << dir << ": " << ec.message() << "\n";
    return 1;
  }
  bool ok = WriteFile(dir / "results.csv", result->csv) &&
            WriteFile(dir / "meta.json", result->meta.dump(2) + "\n");
  for (const auto& [name, text] : result->files) {
    ok = ok && WriteFile(dir / name, text);
  }
  if (!ok) {
    std::cerr << "failed writing results under " << dir << "\n";
    return 1;
  }
  std::cout << dir.string() << "\n";
  return 0;
}
