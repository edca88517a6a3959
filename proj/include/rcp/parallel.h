// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

namespace rcp {

/// Worker count: RCP_THREADS when set to a positive integer, otherwise the
/// hardware concurrency.
int worker_count();

/// Calls body(row) for every row in [0, rows). Rows are handed out
/// dynamically; body must only write state owned by its row.
void parallel_rows(int rows, const std::function<void(int)> &body);

} // namespace rcp
