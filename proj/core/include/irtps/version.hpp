// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace irtps {

inline constexpr const char* kVersion = "0.1.0";

}
