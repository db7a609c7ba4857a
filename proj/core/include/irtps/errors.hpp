// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace irtps {

/// File / dataset I/O failure.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed configuration (scene.cfg keys, value syntax).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numeric abort inside the reconstruction loop.
class pipeline_error : public std::runtime_error {
public:
    explicit pipeline_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace irtps
