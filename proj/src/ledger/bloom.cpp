// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/ledger/bloom.hpp>
#include <appgate/ledger/gas.hpp>

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace appgate::ledger {

std::uint64_t GasSchedule::calldata_cost(ByteView calldata) const noexcept {
    const auto zeros{static_cast<std::uint64_t>(std::count(calldata.begin(), calldata.end(), 0))};
    return zeros * calldata_zero_byte + (calldata.size() - zeros) * calldata_nonzero_byte;
}

bool GasSchedule::valid() const noexcept {
    return tx_base > 0 && calldata_nonzero_byte > 0 && calldata_zero_byte > 0 && sstore_set > 0 &&
           log_base > 0 && log_topic > 0 && log_data_byte > 0;
}

std::array<std::uint16_t, 3> Bloom2048::bit_indices(ByteView value) noexcept {
    const auto h{keccak256(value)};
    std::array<std::uint16_t, 3> out{};
    for (std::size_t i{0}; i < 3; ++i) {
        out[i] = static_cast<std::uint16_t>(((h[2 * i] << 8) | h[2 * i + 1]) % kBits);
    }
    return out;
}

void Bloom2048::set(std::uint16_t bit) noexcept {
    bits_[kBytes - 1 - bit / 8] |= static_cast<std::uint8_t>(1u << (bit % 8));
}

bool Bloom2048::test(std::uint16_t bit) const noexcept {
    return (bits_[kBytes - 1 - bit / 8] >> (bit % 8)) & 1u;
}

void Bloom2048::insert(ByteView value) noexcept {
    for (const auto bit : bit_indices(value)) set(bit);
}

bool Bloom2048::query(ByteView value) const noexcept {
    const auto idx{bit_indices(value)};
    return std::all_of(idx.begin(), idx.end(), [this](auto bit) { return test(bit); });
}

void Bloom2048::merge(const Bloom2048& other) noexcept {
    for (std::size_t i{0}; i < kBytes; ++i) bits_[i] |= other.bits_[i];
}

std::size_t Bloom2048::popcount() const noexcept {
    return std::accumulate(bits_.begin(), bits_.end(), std::size_t{0},
                           [](std::size_t acc, std::uint8_t b) { return acc + std::popcount(b); });
}

Bloom2048 Bloom2048::from_bytes(ByteView raw) {
    if (raw.size() != kBytes) throw std::invalid_argument{"bloom must be 256 bytes"};
    Bloom2048 b;
    std::copy(raw.begin(), raw.end(), b.bits_.begin());
    return b;
}

}  // namespace appgate::ledger
