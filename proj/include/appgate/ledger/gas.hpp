// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include <appgate/bytes.hpp>

namespace appgate::ledger {

//! Gas cost model. Storage writes and log emission are the two costs the
//! log-based registry design trades against each other.
struct GasSchedule {
    std::uint64_t tx_base{21'000};
    std::uint64_t calldata_nonzero_byte{16};
    std::uint64_t calldata_zero_byte{4};
    std::uint64_t sstore_set{20'000};  // per 32-byte word
    std::uint64_t log_base{375};
    std::uint64_t log_topic{375};
    std::uint64_t log_data_byte{8};

    [[nodiscard]] std::uint64_t calldata_cost(ByteView calldata) const noexcept;
    [[nodiscard]] std::uint64_t intrinsic(ByteView calldata) const noexcept {
        return tx_base + calldata_cost(calldata);
    }
    [[nodiscard]] std::uint64_t log_cost(std::size_t topics, std::size_t data_len) const noexcept {
        return log_base + log_topic * topics + log_data_byte * data_len;
    }
    [[nodiscard]] bool valid() const noexcept;
};

inline constexpr GasSchedule kDefaultSchedule{};

static_assert(kDefaultSchedule.sstore_set == 20'000);
static_assert(kDefaultSchedule.log_base == 375);

}  // namespace appgate::ledger
