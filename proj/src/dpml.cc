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

#include "netdp/dpml.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "netdp/accountant.h"
#include "netdp/bound_report.h"
#include "netdp/internal/parallel.h"
#include "netdp/mechanisms.h"
#include "netdp/protocols.h"
#include "netdp/rdp.h"
#include "netdp/rng.h"
#include "netdp/simd/vector_kernels.h"

namespace netdp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSigmaFloor = 1e-3;
constexpr double kSigmaCeiling = 1e6;
constexpr double kSigmaRatio = 1.01;

// ln(1 + exp(-m)) without overflow.
double Softplus(double m) {
  return m > 0.0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
}

// 1 / (1 + exp(m)).
double Sigmoid(double m) {
  if (m >= 0.0) {
    const double e = std::exp(-m);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(m));
}

double GaussianEps0(double sigma, double sensitivity, double delta0) {
  return GaussianImpliedEpsilon(sigma, sensitivity, delta0);
}

struct LocalEpsilon {
  double epsilon = kInf;
  std::string route;
};

LocalEpsilon LocalRegimeEpsilon(double sigma, int64_t k, double sensitivity,
                                double delta) {
  LocalEpsilon best;
  const double kd = static_cast<double>(k);
  const double simple_eps0 = GaussianEps0(sigma, sensitivity, delta / kd);
  if (simple_eps0 < 1.0) {
    best = LocalEpsilon{kd * simple_eps0, "simple"};
  }
  const double advanced_eps0 =
      GaussianEps0(sigma, sensitivity, delta / (2.0 * kd));
  if (advanced_eps0 < 1.0) {
    auto advanced =
        AdvancedComposition(advanced_eps0, delta / (2.0 * kd), k, delta / 2.0);
    if (advanced.ok() && advanced->epsilon < best.epsilon) {
      best = LocalEpsilon{advanced->epsilon, "advanced"};
    }
  }
  return best;
}

absl::Status CheckSetup(const RegimeSetup& s) {
  if (absl::Status st = ValidateBudget(s.budget); !st.ok()) return st;
  if (!(s.budget.delta > 0.0)) {
    return absl::InvalidArgumentError("SGD accounting needs delta > 0");
  }
  if (s.n < 2 || s.length < 1 || !(s.cap_multiplier > 0.0) ||
      !(s.lipschitz > 0.0)) {
    return absl::InvalidArgumentError(
        "SGD setup needs n >= 2, T >= 1, c > 0, L > 0");
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Dataset> GenerateSynthetic(const SyntheticOptions& options,
                                          uint64_t seed) {
  if (options.rows < 2 || options.dimension < 1 ||
      !(options.separation >= 0.0)) {
    return absl::InvalidArgumentError(
        "synthetic data needs rows >= 2, d >= 1, separation >= 0");
  }
  Rng rng(seed, Stream::kData);
  Dataset data;
  data.dimension = options.dimension;
  data.features.resize(options.rows * options.dimension);
  data.labels.resize(options.rows);
  const double shift =
      options.separation / (2.0 * std::sqrt(static_cast<double>(options.dimension)));
  for (int64_t i = 0; i < options.rows; ++i) {
    const double y = rng.Uniform() < 0.5 ? -1.0 : 1.0;
    data.labels[i] = y;
    for (int64_t j = 0; j < options.dimension; ++j) {
      data.features[i * options.dimension + j] =
          y * shift + rng.StandardNormal();
    }
  }
  return data;
}

absl::StatusOr<Dataset> ParseDatasetCsv(absl::string_view csv) {
  Dataset data;
  bool header = true;
  int64_t line_no = 0;
  for (absl::string_view line : absl::StrSplit(csv, '\n', absl::SkipEmpty())) {
    ++line_no;
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    std::vector<absl::string_view> fields = absl::StrSplit(line, ',');
    if (header) {
      if (fields.size() < 2 ||
          absl::StripAsciiWhitespace(fields.back()) != "label") {
        return absl::InvalidArgumentError(
            "dataset CSV header must end with a `label` column");
      }
      data.dimension = static_cast<int64_t>(fields.size()) - 1;
      header = false;
      continue;
    }
    if (static_cast<int64_t>(fields.size()) != data.dimension + 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, " has ", fields.size(),
                       " fields, expected ", data.dimension + 1));
    }
    for (int64_t j = 0; j <= data.dimension; ++j) {
      double value = 0.0;
      if (!absl::SimpleAtod(absl::StripAsciiWhitespace(fields[j]), &value) ||
          !std::isfinite(value)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "line ", line_no, " column ", j + 1, " is not a finite number"));
      }
      if (j < data.dimension) {
        data.features.push_back(value);
      } else if (value == 1.0 || value == -1.0) {
        data.labels.push_back(value);
      } else {
        return absl::InvalidArgumentError(
            absl::StrCat("line ", line_no, ": label must be -1 or 1"));
      }
    }
  }
  if (header) return absl::InvalidArgumentError("empty dataset CSV");
  if (data.labels.empty()) {
    return absl::InvalidArgumentError("dataset CSV has no rows");
  }
  return data;
}

absl::StatusOr<Dataset> LoadDatasetCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseDatasetCsv(buffer.str());
}

absl::StatusOr<PreparedData> Preprocess(const Dataset& raw,
                                        const PreprocessOptions& options,
                                        uint64_t seed) {
  const int64_t rows = raw.rows();
  const int64_t d = raw.dimension;
  if (d < 1 || static_cast<int64_t>(raw.features.size()) != rows * d) {
    return absl::InvalidArgumentError("feature matrix does not match labels");
  }
  if (!(options.train_fraction > 0.0 && options.train_fraction <= 1.0)) {
    return absl::InvalidArgumentError("train fraction must lie in (0, 1]");
  }
  for (double x : raw.features) {
    if (std::isnan(x)) return absl::InvalidArgumentError("NaN feature");
  }
  const auto train_rows = static_cast<int64_t>(
      std::llround(options.train_fraction * static_cast<double>(rows)));
  if (options.users < 1 || train_rows < options.users) {
    return absl::InvalidArgumentError(absl::StrCat(
        "need at least one train row per user: ", train_rows, " rows for ",
        options.users, " users"));
  }

  std::vector<int64_t> order(rows);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed, Stream::kData);
  std::shuffle(order.begin(), order.end(), rng.engine());

  std::vector<double> mean(d, 0.0);
  std::vector<double> sd(d, 0.0);
  for (int64_t i = 0; i < train_rows; ++i) {
    for (int64_t j = 0; j < d; ++j) mean[j] += raw.features[order[i] * d + j];
  }
  for (double& m : mean) m /= static_cast<double>(train_rows);
  for (int64_t i = 0; i < train_rows; ++i) {
    for (int64_t j = 0; j < d; ++j) {
      const double c = raw.features[order[i] * d + j] - mean[j];
      sd[j] += c * c;
    }
  }
  PreparedData out;
  std::vector<int64_t> kept;
  for (int64_t j = 0; j < d; ++j) {
    sd[j] = std::sqrt(sd[j] / static_cast<double>(train_rows));
    if (sd[j] > 0.0) {
      kept.push_back(j);
    } else {
      out.warnings.push_back(
          absl::StrCat("dropping constant feature column ", j + 1));
    }
  }
  if (kept.empty()) {
    return absl::InvalidArgumentError("every feature column is constant");
  }

  auto fill = [&](Dataset& target, int64_t begin, int64_t end) {
    target.dimension = static_cast<int64_t>(kept.size());
    for (int64_t i = begin; i < end; ++i) {
      const int64_t src = order[i];
      const size_t offset = target.features.size();
      for (int64_t j : kept) {
        target.features.push_back((raw.features[src * d + j] - mean[j]) /
                                  sd[j]);
      }
      std::span<double> x(target.features.data() + offset, kept.size());
      const double norm = std::sqrt(simd::SquaredNorm(x));
      if (norm > 0.0) {
        for (double& v : x) v /= norm;
        // Rounding can leave the norm a hair above one.
        const double again = std::sqrt(simd::SquaredNorm(x));
        if (again > 1.0) {
          for (double& v : x) v /= again * (1.0 + 1e-15);
        }
      }
      target.labels.push_back(raw.labels[src]);
    }
  };
  fill(out.train, 0, train_rows);
  fill(out.test, train_rows, rows);
  out.train.users.resize(options.users);
  for (int64_t i = 0; i < train_rows; ++i) {
    out.train.users[i % options.users].push_back(static_cast<int32_t>(i));
  }
  return out;
}

void LogisticGrad(std::span<const double> w, const Dataset& data,
                  std::span<const int32_t> rows, std::span<double> grad) {
  std::fill(grad.begin(), grad.end(), 0.0);
  if (rows.empty()) return;
  const double scale = 1.0 / static_cast<double>(rows.size());
  for (int32_t i : rows) {
    const double y = data.labels[i];
    const std::span<const double> x = data.row(i);
    // d/dw ln(1 + exp(-y w.x)) = -y x / (1 + exp(y w.x)).
    simd::Axpy(-y * Sigmoid(y * simd::Dot(w, x)) * scale, x, grad);
  }
}

double LogisticObjective(std::span<const double> w, const Dataset& data) {
  if (data.rows() == 0) return 0.0;
  double sum = 0.0;
  for (int64_t i = 0; i < data.rows(); ++i) {
    sum += Softplus(data.labels[i] * simd::Dot(w, data.row(i)));
  }
  return sum / static_cast<double>(data.rows());
}

double Accuracy(std::span<const double> w, const Dataset& data) {
  if (data.rows() == 0) return 0.0;
  int64_t correct = 0;
  for (int64_t i = 0; i < data.rows(); ++i) {
    const double score = simd::Dot(w, data.row(i));
    if ((score >= 0.0 ? 1.0 : -1.0) == data.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.rows());
}

absl::string_view RegimeName(Regime regime) {
  switch (regime) {
    case Regime::kLocal:
      return "local";
    case Regime::kNetwork:
      return "network";
    case Regime::kCentralized:
      return "centralized";
  }
  return "unknown";
}

absl::StatusOr<Regime> ParseRegime(absl::string_view name) {
  const std::string lower = absl::AsciiStrToLower(name);
  if (lower == "local") return Regime::kLocal;
  if (lower == "network") return Regime::kNetwork;
  if (lower == "centralized") return Regime::kCentralized;
  return absl::InvalidArgumentError(absl::StrCat("unknown regime: ", name));
}

int64_t ContributionBound(double cap_multiplier, int64_t length, int64_t n) {
  return static_cast<int64_t>(std::ceil(
      cap_multiplier * static_cast<double>(length) / static_cast<double>(n) -
      1e-9));
}

absl::StatusOr<Calibration> RegimeEpsilon(const RegimeSetup& setup,
                                          double sigma) {
  if (absl::Status s = CheckSetup(setup); !s.ok()) return s;
  if (!(sigma > 0.0)) return absl::InvalidArgumentError("sigma must be > 0");
  Calibration out;
  out.sigma = sigma;
  out.contribution_bound =
      ContributionBound(setup.cap_multiplier, setup.length, setup.n);
  const double sensitivity = 2.0 * setup.lipschitz;
  switch (setup.regime) {
    case Regime::kLocal: {
      const LocalEpsilon local = LocalRegimeEpsilon(
          sigma, out.contribution_bound, sensitivity, setup.budget.delta);
      out.epsilon = local.epsilon;
      out.route = local.route;
      break;
    }
    case Regime::kNetwork: {
      auto network = NetworkSgdEpsilon(
          sigma, static_cast<double>(out.contribution_bound), setup.lipschitz,
          static_cast<double>(setup.n), setup.budget.delta);
      if (!network.ok()) return network.status();
      out.epsilon = network->epsilon;
      out.alpha = network->alpha;
      out.route = "rdp";
      break;
    }
    case Regime::kCentralized: {
      auto central = SampledGaussianEpsilon(
          1.0 / static_cast<double>(setup.n), sigma / sensitivity,
          setup.length, setup.budget.delta);
      if (!central.ok()) return central.status();
      out.epsilon = central->epsilon;
      out.alpha = central->alpha;
      out.route = "rdp";
      break;
    }
  }
  return out;
}

absl::StatusOr<Calibration> CalibrateRegime(const RegimeSetup& setup) {
  if (absl::Status s = CheckSetup(setup); !s.ok()) return s;
  if (setup.regime == Regime::kNetwork) {
    const int64_t k =
        ContributionBound(setup.cap_multiplier, setup.length, setup.n);
    auto found = SigmaSearch(setup.budget.epsilon, setup.budget.delta,
                             static_cast<double>(k),
                             static_cast<double>(setup.n), setup.lipschitz,
                             {kSigmaFloor, kSigmaCeiling, kSigmaRatio});
    if (!found.ok()) return found.status();
    return Calibration{found->sigma, found->alpha, found->epsilon, k, "rdp"};
  }
  const double log_ratio = std::log(kSigmaRatio);
  const auto count = static_cast<int64_t>(
      std::floor(std::log(kSigmaCeiling / kSigmaFloor) / log_ratio));
  auto sigma_at = [&](int64_t k) {
    return kSigmaFloor * std::exp(static_cast<double>(k) * log_ratio);
  };
  auto top = RegimeEpsilon(setup, sigma_at(count));
  if (!top.ok()) return top.status();
  if (!(top->epsilon <= setup.budget.epsilon)) {
    return absl::FailedPreconditionError(absl::StrCat(
        RegimeName(setup.regime), " regime cannot reach epsilon ",
        setup.budget.epsilon, " with sigma <= ", kSigmaCeiling));
  }
  // Epsilon is non-increasing in sigma on every path.
  int64_t lo = -1;
  int64_t hi = count;
  Calibration best = *top;
  while (hi - lo > 1) {
    const int64_t mid = lo + (hi - lo) / 2;
    auto at = RegimeEpsilon(setup, sigma_at(mid));
    if (!at.ok()) return at.status();
    if (at->epsilon <= setup.budget.epsilon) {
      hi = mid;
      best = *at;
    } else {
      lo = mid;
    }
  }
  return best;
}

absl::StatusOr<TrainResult> Train(const TrainConfig& config,
                                  const Dataset& train, const Dataset& test,
                                  double sigma) {
  const RegimeSetup& setup = config.setup;
  if (static_cast<int64_t>(train.users.size()) != setup.n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "dataset has ", train.users.size(), " users, setup has ", setup.n));
  }
  if (test.rows() > 0 && test.dimension != train.dimension) {
    return absl::InvalidArgumentError("train and test dimensions differ");
  }
  if (config.record_every < 1) {
    return absl::InvalidArgumentError("record_every must be >= 1");
  }
  SgdOptions options;
  options.n = setup.n;
  options.length = setup.length;
  options.dimension = train.dimension;
  options.eta = config.eta;
  options.sigma = sigma;
  if (setup.regime != Regime::kCentralized) {
    options.contribution_cap =
        ContributionBound(setup.cap_multiplier, setup.length, setup.n);
    // Others rely on the network noise; a local user only hides itself.
    options.noise_when_capped = setup.regime == Regime::kNetwork;
  }

  TrainResult result;
  const std::vector<double> zero(train.dimension, 0.0);
  result.initial_objective = LogisticObjective(zero, train);
  result.trace.push_back(TracePoint{0, result.initial_objective,
                                    Accuracy(zero, test)});
  const double limit = 1e3 * result.initial_objective;
  bool blown = false;
  options.on_step = [&](int64_t step, std::span<const double> w) {
    if (blown) return;
    if (step % config.record_every != 0 && step != setup.length) return;
    const double objective = LogisticObjective(w, train);
    if (!std::isfinite(objective)) {
      blown = true;
      result.diverged = true;
      result.trace.push_back(TracePoint{step, kInf, 0.0});
      return;
    }
    if (objective > limit) result.diverged = true;
    result.trace.push_back(TracePoint{step, objective, Accuracy(w, test)});
  };
  int64_t violations = 0;
  auto oracle = [&](int32_t user, std::span<const double> w,
                    std::span<double> grad) {
    LogisticGrad(w, train, train.users[user - 1], grad);
    if (simd::SquaredNorm(grad) > setup.lipschitz * setup.lipschitz *
                                      (1.0 + 1e-12)) {
      ++violations;
    }
  };
  auto run = RunCompleteSgd(options, oracle, config.seed);
  if (!run.ok()) return run.status();
  result.model = std::get<std::vector<double>>(run->output);
  result.final_objective = result.trace.back().objective;
  result.final_accuracy = result.trace.back().test_accuracy;
  result.max_gradient_norm = run->max_gradient_norm;
  result.lipschitz_violations = violations;
  std::vector<int64_t> turns(setup.n + 1, 0);
  for (int64_t t = 1; t <= run->trace.length(); ++t) {
    if (run->contributed[t - 1]) {
      result.max_contributions =
          std::max(result.max_contributions, ++turns[run->trace.user_at(t)]);
    }
  }
  return result;
}

std::vector<double> EtaGrid() {
  std::vector<double> grid(10);
  const double lo = std::log(1e-4);
  const double hi = std::log(2.0);
  for (int i = 0; i < 10; ++i) {
    grid[i] = std::exp(lo + (hi - lo) * i / 9.0);
  }
  grid.back() = 2.0;
  return grid;
}

double RegimeSummary::MeanObjective() const {
  if (final_objectives.empty()) return kInf;
  double sum = 0.0;
  for (double v : final_objectives) sum += v;
  return sum / static_cast<double>(final_objectives.size());
}

absl::StatusOr<RegimeSummary> TuneAndTrain(const RegimeSetup& setup,
                                           const PreparedData& data,
                                           std::span<const double> etas,
                                           int64_t runs, uint64_t seed,
                                           int workers) {
  if (runs < 1) return absl::InvalidArgumentError("runs must be >= 1");
  if (etas.empty()) return absl::InvalidArgumentError("no step sizes to try");
  auto calibration = CalibrateRegime(setup);
  if (!calibration.ok()) return calibration.status();

  RegimeSummary best;
  best.calibration = *calibration;
  double best_score = kInf;
  std::vector<TrainResult> best_runs;
  std::vector<std::pair<double, double>> scores;
  for (double eta : etas) {
    std::vector<absl::StatusOr<TrainResult>> results(runs);
    internal::ParallelFor(runs, workers, [&](int64_t r) {
      TrainConfig config{setup, eta, DeriveSeed(seed, r), 100};
      results[r] = Train(config, data.train, data.test, calibration->sigma);
    });
    std::vector<TrainResult> ok;
    double sum = 0.0;
    for (auto& r : results) {
      if (!r.ok()) return r.status();
      sum += r->final_objective;
      ok.push_back(*std::move(r));
    }
    double score = sum / static_cast<double>(runs);
    if (std::isnan(score)) score = kInf;
    scores.emplace_back(eta, score);
    if (best_runs.empty() || score < best_score) {
      best_score = score;
      best.eta = eta;
      best_runs = std::move(ok);
    }
  }
  best.eta_scores = std::move(scores);
  best.initial_objective = best_runs.front().initial_objective;
  size_t points = 0;
  const TrainResult* longest = &best_runs.front();
  for (const TrainResult& r : best_runs) {
    if (r.trace.size() > points) {
      points = r.trace.size();
      longest = &r;
    }
  }
  best.mean_trace.resize(points);
  best.std_trace.resize(points);
  for (const TrainResult& r : best_runs) {
    best.final_objectives.push_back(r.final_objective);
    best.final_accuracies.push_back(r.final_accuracy);
    if (r.diverged) ++best.diverged_runs;
    best.lipschitz_violations += r.lipschitz_violations;
    best.max_contributions =
        std::max(best.max_contributions, r.max_contributions);
  }
  const double count = static_cast<double>(best_runs.size());
  for (size_t i = 0; i < points; ++i) {
    double obj = 0.0, obj2 = 0.0, acc = 0.0, acc2 = 0.0;
    for (const TrainResult& r : best_runs) {
      // A blown-up run stops recording; carry its last point forward.
      const TracePoint& p = r.trace[std::min(i, r.trace.size() - 1)];
      obj += p.objective;
      obj2 += p.objective * p.objective;
      acc += p.test_accuracy;
      acc2 += p.test_accuracy * p.test_accuracy;
    }
    const int64_t step = longest->trace[i].step;
    const double mo = obj / count;
    const double ma = acc / count;
    best.mean_trace[i] = TracePoint{step, mo, ma};
    best.std_trace[i] =
        TracePoint{step, std::sqrt(std::max(0.0, obj2 / count - mo * mo)),
                   std::sqrt(std::max(0.0, acc2 / count - ma * ma))};
  }
  return best;
}

std::string TraceToCsv(std::span<const TracePoint> trace) {
  std::string out = "step,objective,test_accuracy\n";
  for (const TracePoint& p : trace) {
    absl::StrAppend(&out, p.step, ",", FormatDouble(p.objective), ",",
                    FormatDouble(p.test_accuracy), "\n");
  }
  return out;
}

}  // namespace netdp
