// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#include "irtps/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace irtps {

namespace {
std::atomic<int> g_max_threads{0};
}

int max_threads() {
    int n = g_max_threads.load(std::memory_order_relaxed);
    if (n <= 0) {
        n = static_cast<int>(std::thread::hardware_concurrency());
    }
    return std::max(1, n);
}

void set_max_threads(int n) { g_max_threads.store(n, std::memory_order_relaxed); }

void parallel_for(int begin, int end, const std::function<void(int)>& fn) {
    int count = end - begin;
    if (count <= 0) return;

    int workers = std::min(max_threads(), count);
    if (workers == 1) {
        for (int i = begin; i < end; ++i) fn(i);
        return;
    }

    int block = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        int lo = begin + w * block;
        int hi = std::min(end, lo + block);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace irtps
