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

#ifndef NETDP_INTERNAL_PARALLEL_H_
#define NETDP_INTERNAL_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace netdp::internal {

// Calls fn(i) for i in [0, count) on up to `workers` threads. Callers write
// results into slot i, so output order never depends on scheduling.
template <typename Fn>
void ParallelFor(int64_t count, int workers, Fn&& fn) {
  const int threads =
      static_cast<int>(std::clamp<int64_t>(workers, 1, std::max<int64_t>(count, 1)));
  if (threads <= 1) {
    for (int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int64_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace netdp::internal

#endif  // NETDP_INTERNAL_PARALLEL_H_
