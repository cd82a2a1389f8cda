// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace gf {

// Worker count: GROUPFORGE_THREADS when set (clamped to >= 1), otherwise
// std::thread::hardware_concurrency.
size_t thread_budget();

// Runs fn(0..count-1) across the thread budget. Indices are distributed
// statically; the first exception thrown by any worker is rethrown after
// all workers joined. fn must be safe to call concurrently for distinct
// indices.
void parallel_for(size_t count, const std::function<void(size_t)>& fn);

}  // namespace gf
