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

#ifndef NETDP_INTERNAL_STATUS_MACROS_H_
#define NETDP_INTERNAL_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define NETDP_STATUS_CONCAT_INNER_(x, y) x##y
#define NETDP_STATUS_CONCAT_(x, y) NETDP_STATUS_CONCAT_INNER_(x, y)

#define NETDP_RETURN_IF_ERROR(expr)          \
  do {                                       \
    const absl::Status _netdp_st = (expr);   \
    if (!_netdp_st.ok()) return _netdp_st;   \
  } while (0)

#define NETDP_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                 \
  if (!statusor.ok()) return statusor.status();            \
  lhs = std::move(statusor).value()

#define NETDP_ASSIGN_OR_RETURN(lhs, rexpr) \
  NETDP_ASSIGN_OR_RETURN_IMPL_(            \
      NETDP_STATUS_CONCAT_(_netdp_statusor_, __LINE__), lhs, rexpr)

#endif  // NETDP_INTERNAL_STATUS_MACROS_H_
