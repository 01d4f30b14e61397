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

#ifndef NETDP_SIMD_VECTOR_KERNELS_H_
#define NETDP_SIMD_VECTOR_KERNELS_H_

#include <span>

#include "absl/status/status.h"
#include "absl/strings/string_view.h"

namespace netdp::simd {

enum class Isa { kScalar, kAvx2 };

absl::string_view IsaName(Isa isa);

// True if this build has the variant and the CPU can run it.
bool IsaSupported(Isa isa);

// The variant used by the dispatching entry points below. Chosen on first use
// from the CPU, or from NETDP_ISA=scalar|avx2 in the environment.
Isa ActiveIsa();

// Overrides the active variant for the rest of the process.
absl::Status SetActiveIsa(Isa isa);

double Dot(std::span<const double> a, std::span<const double> b);
// y += alpha * x
void Axpy(double alpha, std::span<const double> x, std::span<double> y);
double SquaredNorm(std::span<const double> x);

namespace scalar {
double Dot(const double* a, const double* b, size_t size);
void Axpy(double alpha, const double* x, double* y, size_t size);
double SquaredNorm(const double* x, size_t size);
}  // namespace scalar

namespace avx2 {
double Dot(const double* a, const double* b, size_t size);
void Axpy(double alpha, const double* x, double* y, size_t size);
double SquaredNorm(const double* x, size_t size);
}  // namespace avx2

}  // namespace netdp::simd

#endif  // NETDP_SIMD_VECTOR_KERNELS_H_
