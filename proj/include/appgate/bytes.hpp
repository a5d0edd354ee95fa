// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace appgate {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

Bytes to_bytes(std::string_view s);
std::string to_string(ByteView b);

//! Lowercase hex, no prefix.
std::string to_hex(ByteView b);

//! Accepts an optional "0x" prefix and either case. Odd length is rejected.
std::optional<Bytes> from_hex(std::string_view hex);

inline ByteView as_view(std::string_view s) noexcept {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace appgate
