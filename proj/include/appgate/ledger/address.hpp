// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <functional>
#include <optional>
#include <string>

#include <appgate/crypto.hpp>

namespace appgate::ledger {

using Hash32 = Hash256;
using Wei = std::uint64_t;

//! 20-byte account identifier.
struct Address {
    std::array<std::uint8_t, 20> bytes{};

    static std::optional<Address> from_hex(std::string_view hex);
    //! Deterministic test/genesis address: the low 20 bytes of keccak256(label).
    static Address derive(std::string_view label) noexcept;

    [[nodiscard]] std::string hex() const;  // "0x" + 40 lowercase digits
    [[nodiscard]] ByteView view() const noexcept { return {bytes.data(), bytes.size()}; }

    auto operator<=>(const Address&) const = default;
};

}  // namespace appgate::ledger

template <>
struct std::hash<appgate::ledger::Address> {
    std::size_t operator()(const appgate::ledger::Address& a) const noexcept {
        std::size_t h{0};
        for (std::size_t i{0}; i < sizeof(std::size_t); ++i) h = (h << 8) | a.bytes[i];
        return h;
    }
};
