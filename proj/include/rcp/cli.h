// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rcp::cli {

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;  // flag or scene parse error
inline constexpr int kExitIo = 3;     // unreadable input or unwritable output
inline constexpr int kExitConfig = 4; // dimension or configuration invariant violated

/// Entry point of the `rcp` tool. args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

int run(int argc, char **argv);

} // namespace rcp::cli
