// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

#include <appgate/bytes.hpp>

namespace appgate {

using Hash256 = std::array<std::uint8_t, 32>;
using Md5Digest = std::array<std::uint8_t, 16>;

//! Original Keccak-256 (0x01 padding), as used for Ethereum topics and bloom bits.
Hash256 keccak256(ByteView data) noexcept;
inline Hash256 keccak256(std::string_view s) noexcept { return keccak256(as_view(s)); }

Hash256 sha256(ByteView data);
Md5Digest md5(ByteView data);

template <std::size_t N>
std::string to_hex(const std::array<std::uint8_t, N>& a) {
    return to_hex(ByteView{a.data(), a.size()});
}

}  // namespace appgate
