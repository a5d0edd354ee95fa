// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>

#include <appgate/ledger/ledger.hpp>

namespace appgate::gateway {

enum class FeeRejection { unknown_tx, wrong_destination, insufficient_value, already_used };

std::string_view to_string(FeeRejection) noexcept;

class FeeRejected : public std::runtime_error {
  public:
    FeeRejected(FeeRejection reason, const std::string& detail);
    [[nodiscard]] FeeRejection reason() const noexcept { return reason_; }

  private:
    FeeRejection reason_;
};

struct FeeTicket {
    ledger::Hash32 tx_id{};
    ledger::Address payer;
    ledger::Wei value{0};
    bool consumed{false};
};

//! Donation transactions accepted as upload fees. A ticket moves
//! free -> reserved -> consumed, or back to free when the upload it backs is rejected.
class FeeLedger {
  public:
    FeeLedger(const ledger::Ledger& chain, ledger::Address registry, std::filesystem::path journal = {});

    //! Checks, in order: the tx exists and succeeded, it went to the registry,
    //! value >= required, the ticket is neither consumed nor reserved.
    FeeTicket reserve(const ledger::Hash32& tx_id, ledger::Wei required);
    void commit(const ledger::Hash32& tx_id);
    void release(const ledger::Hash32& tx_id);

    //! reserve + commit.
    FeeTicket verify(const ledger::Hash32& tx_id, ledger::Wei required);

    [[nodiscard]] bool consumed(const ledger::Hash32& tx_id) const;
    [[nodiscard]] ledger::Wei consumed_value() const;
    [[nodiscard]] std::size_t consumed_count() const;

  private:
    const ledger::Ledger& chain_;
    ledger::Address registry_;
    std::filesystem::path journal_;
    mutable std::mutex mu_;
    std::map<ledger::Hash32, FeeTicket> consumed_;
    std::map<ledger::Hash32, FeeTicket> reserved_;
};

}  // namespace appgate::gateway
