// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace rcp {

enum class ErrorKind {
    InvalidDimensions,
    InvalidInput,
    InvalidScene,
    Parse,
    Io,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace rcp
