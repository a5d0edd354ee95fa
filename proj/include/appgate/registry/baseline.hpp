// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <appgate/registry/registry.hpp>

namespace appgate::registry {

//! Comparison backend: the conventional struct-array contract that keeps every
//! record in storage words and checks duplicates on chain. Exists only to
//! measure what the log-based design saves.
//!
//! Layout: slot keccak256("records.length") holds the record count; record i
//! occupies consecutive words starting at keccak256("records" | u64 i), holding
//! the canonical encoding zero-padded to a whole word.
class StructRegistry final : public ledger::ContractExecutor {
  public:
    StructRegistry(ledger::Address self, ledger::Address owner) noexcept : self_{self}, owner_{owner} {}

    void execute(ledger::CallContext& ctx) override;

    [[nodiscard]] const ledger::Address& address() const noexcept { return self_; }

    //! Storage words a baseline store of r writes: the padded encoding plus the length word.
    [[nodiscard]] static std::uint64_t words_written(const AppRecord& r);

  private:
    void store(ledger::CallContext& ctx, ByteView encoded);

    ledger::Address self_;
    ledger::Address owner_;
};

}  // namespace appgate::registry
