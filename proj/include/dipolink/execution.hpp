// Copyright 2026 The dipolink Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace dipolink {

/// Selects the OpenMP kernel or its serial reference. Both produce
/// bit-identical results; reductions are always performed serially in a
/// fixed order after the parallel map.
enum class Execution { Serial, Parallel };

/// Worker count for parallel kernels. Honours DIPOLINK_THREADS (0 = auto),
/// read once per process.
int workerCount();

/// Calls body(i) for i in [0, count). Parallel runs use dynamic scheduling
/// in blocks of `chunk`. If any call throws, every index still runs and the
/// exception from the lowest failing index is rethrown.
void parallelFor(std::size_t count, Execution exec, const std::function<void(std::size_t)>& body,
                 std::size_t chunk = 1);

}  // namespace dipolink
