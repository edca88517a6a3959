// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#include "rcp/cli.h"

int main(int argc, char **argv) { return rcp::cli::run(argc, argv); }
