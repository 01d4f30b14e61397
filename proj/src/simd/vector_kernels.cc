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

#include "netdp/simd/vector_kernels.h"

#include <atomic>
#include <cstdlib>
#include <string>

#include "absl/strings/str_cat.h"

namespace netdp::simd {
namespace {

struct Table {
  double (*dot)(const double*, const double*, size_t);
  void (*axpy)(double, const double*, double*, size_t);
  double (*squared_norm)(const double*, size_t);
};

constexpr Table kScalarTable = {scalar::Dot, scalar::Axpy,
                                scalar::SquaredNorm};
#ifdef NETDP_HAVE_AVX2
constexpr Table kAvx2Table = {avx2::Dot, avx2::Axpy, avx2::SquaredNorm};
#endif

const Table* TableFor(Isa isa) {
#ifdef NETDP_HAVE_AVX2
  if (isa == Isa::kAvx2) return &kAvx2Table;
#endif
  (void)isa;
  return &kScalarTable;
}

Isa DetectIsa() {
  if (const char* env = std::getenv("NETDP_ISA"); env != nullptr) {
    const std::string wanted = env;
    if (wanted == "scalar") return Isa::kScalar;
    if (wanted == "avx2" && IsaSupported(Isa::kAvx2)) return Isa::kAvx2;
  }
  return IsaSupported(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar;
}

std::atomic<int>& ActiveSlot() {
  static std::atomic<int> slot{static_cast<int>(DetectIsa())};
  return slot;
}

const Table& Active() { return *TableFor(ActiveIsa()); }

}  // namespace

absl::string_view IsaName(Isa isa) {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

bool IsaSupported(Isa isa) {
  if (isa == Isa::kScalar) return true;
#if defined(NETDP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa ActiveIsa() {
  return static_cast<Isa>(ActiveSlot().load(std::memory_order_relaxed));
}

absl::Status SetActiveIsa(Isa isa) {
  if (!IsaSupported(isa)) {
    return absl::FailedPreconditionError(
        absl::StrCat("ISA not available: ", IsaName(isa)));
  }
  ActiveSlot().store(static_cast<int>(isa), std::memory_order_relaxed);
  return absl::OkStatus();
}

double Dot(std::span<const double> a, std::span<const double> b) {
  return Active().dot(a.data(), b.data(), a.size());
}

void Axpy(double alpha, std::span<const double> x, std::span<double> y) {
  Active().axpy(alpha, x.data(), y.data(), x.size());
}

double SquaredNorm(std::span<const double> x) {
  return Active().squared_norm(x.data(), x.size());
}

}  // namespace netdp::simd
