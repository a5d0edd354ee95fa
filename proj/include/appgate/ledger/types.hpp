// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <appgate/bytes.hpp>
#include <appgate/ledger/address.hpp>
#include <appgate/ledger/bloom.hpp>

namespace appgate::ledger {

struct Transaction {
    Address from;
    Address to;
    Wei value{0};
    Bytes calldata;
    std::uint64_t nonce{0};

    [[nodiscard]] Bytes encode() const;
    //! keccak256 of the canonical encoding.
    [[nodiscard]] Hash32 id() const;

    bool operator==(const Transaction&) const = default;
};

struct LogEntry {
    Address emitter;
    std::vector<Hash32> topics;  // at most four
    Bytes data;

    bool operator==(const LogEntry&) const = default;
};

enum class TxStatus : std::uint8_t { success = 1, revert = 0 };

struct Receipt {
    Hash32 tx_id{};
    TxStatus status{TxStatus::success};
    std::uint64_t gas_used{0};
    std::vector<LogEntry> logs;
    std::string revert_reason;

    [[nodiscard]] bool ok() const noexcept { return status == TxStatus::success; }

    bool operator==(const Receipt&) const = default;
};

struct StorageWrite {
    Address account;
    Hash32 key{};
    Hash32 value{};

    bool operator==(const StorageWrite&) const = default;
};

//! One transaction per block. The header is (number, log_bloom); the state
//! effects are carried alongside so a chain file can be replayed without
//! re-executing contracts.
struct Block {
    std::uint64_t number{0};
    std::vector<Transaction> transactions;
    std::vector<Receipt> receipts;
    Bloom2048 log_bloom;

    std::vector<StorageWrite> storage_writes;
    Wei fee_charged{0};

    [[nodiscard]] Bytes encode() const;
    static Block decode(ByteView raw);  // throws DecodeError

    bool operator==(const Block&) const = default;
};

Bloom2048 bloom_of(const std::vector<LogEntry>& logs) noexcept;

}  // namespace appgate::ledger
