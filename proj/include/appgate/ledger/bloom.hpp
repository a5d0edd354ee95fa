// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

#include <appgate/crypto.hpp>

namespace appgate::ledger {

//! 2048-bit header bloom. Each inserted value sets three bits taken from the
//! first three big-endian byte pairs of keccak256(value), modulo 2048.
class Bloom2048 {
  public:
    static constexpr std::size_t kBits{2048};
    static constexpr std::size_t kBytes{kBits / 8};

    [[nodiscard]] static std::array<std::uint16_t, 3> bit_indices(ByteView value) noexcept;

    void insert(ByteView value) noexcept;
    [[nodiscard]] bool query(ByteView value) const noexcept;
    [[nodiscard]] bool test(std::uint16_t bit) const noexcept;
    void merge(const Bloom2048& other) noexcept;
    [[nodiscard]] std::size_t popcount() const noexcept;

    [[nodiscard]] const std::array<std::uint8_t, kBytes>& bytes() const noexcept { return bits_; }
    static Bloom2048 from_bytes(ByteView raw);

    bool operator==(const Bloom2048&) const = default;

  private:
    void set(std::uint16_t bit) noexcept;

    // bit i lives in bits_[255 - i / 8] at position i % 8, as in Ethereum headers
    std::array<std::uint8_t, kBytes> bits_{};
};

}  // namespace appgate::ledger
