// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

namespace irtps {

/// Current worker cap (never less than 1).
int max_threads();

/// Cap worker parallelism; 0 restores the hardware default.
void set_max_threads(int n);

/// Runs fn(i) for i in [begin, end). Work is split into contiguous blocks,
/// one per worker; callers must only write to disjoint state per index.
void parallel_for(int begin, int end, const std::function<void(int)>& fn);

}  // namespace irtps
