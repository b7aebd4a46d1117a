// Copyright 2026 The dipolink Authors
// SPDX-License-Identifier: Apache-2.0

#include "dipolink/execution.hpp"

#include <omp.h>

#include <cstdlib>
#include <exception>
#include <string>

namespace dipolink {

int workerCount() {
    static const int count = [] {
        int n = omp_get_max_threads();
        if (const char* env = std::getenv("DIPOLINK_THREADS")) {
            try {
                int cap = std::stoi(env);
                if (cap > 0 && cap < n) n = cap;
            } catch (const std::exception&) {
                // malformed value: keep the OpenMP default
            }
        }
        return n < 1 ? 1 : n;
    }();
    return count;
}

void parallelFor(std::size_t count, Execution exec, const std::function<void(std::size_t)>& body, std::size_t chunk) {
    std::exception_ptr error;
    std::size_t errorIndex = count;
    const auto guarded = [&](std::size_t i) {
        try {
            body(i);
        } catch (...) {
#pragma omp critical(dipolink_parallel_for)
            if (i < errorIndex) {
                errorIndex = i;
                error = std::current_exception();
            }
        }
    };
    const auto n = static_cast<std::ptrdiff_t>(count);
    if (exec == Execution::Parallel && count > 1) {
        const int block = chunk < 1 ? 1 : static_cast<int>(chunk);
#pragma omp parallel for schedule(dynamic, block) num_threads(workerCount())
        for (std::ptrdiff_t i = 0; i < n; ++i) guarded(static_cast<std::size_t>(i));
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) guarded(static_cast<std::size_t>(i));
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace dipolink
