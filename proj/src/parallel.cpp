// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#include "rcp/parallel.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rcp {

int worker_count() {
    if (const char *env = std::getenv("RCP_THREADS")) {
        int n = 0;
        const char *end = env + std::strlen(env);
        auto [ptr, ec] = std::from_chars(env, end, n);
        if (ec == std::errc{} && ptr == end && n > 0)
            return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_rows(int rows, const std::function<void(int)> &body) {
    const int workers = std::min(worker_count(), rows);
    if (workers <= 1) {
        for (int r = 0; r < rows; ++r)
            body(r);
        return;
    }

    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        try {
            for (int r = next++; r < rows; r = next++)
                body(r);
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
            next = rows;
        }
    };

    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers - 1));
    for (int w = 1; w < workers; ++w)
        pool.emplace_back(work);
    work();
    pool.clear();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace rcp
