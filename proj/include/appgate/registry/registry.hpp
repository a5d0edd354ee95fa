// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>

#include <appgate/ledger/ledger.hpp>
#include <appgate/registry/app_record.hpp>

namespace appgate::registry {

enum class RegistryErrc {
    not_whitelisted,
    not_owner,
    malformed_record,
    empty_batch,
    batch_too_large,
    zero_value,
    duplicate_record,
    non_payable,
    unknown_selector,
};

//! Revert reasons are "<Name>" or "<Name>: detail", with Name from this table.
std::string_view to_string(RegistryErrc) noexcept;
std::optional<RegistryErrc> parse_revert_reason(std::string_view reason) noexcept;

class RegistryError : public std::runtime_error {
  public:
    RegistryError(RegistryErrc code, const std::string& reason);
    [[nodiscard]] RegistryErrc code() const noexcept { return code_; }

  private:
    RegistryErrc code_;
};

using Selector = std::array<std::uint8_t, 4>;

//! First four bytes of keccak256(signature).
Selector selector_of(std::string_view signature) noexcept;

//! Calldata layouts: selector followed by a compact argument encoding
//! (docs/formats.md). No ABI padding.
namespace calldata {

inline constexpr std::string_view kStoreApp{"storeApp(bytes)"};
inline constexpr std::string_view kStoreAppBatch{"storeAppBatch(bytes[])"};
inline constexpr std::string_view kStoreAppBaseline{"storeAppBaseline(bytes)"};
inline constexpr std::string_view kWhitelistAdd{"whitelistAdd(address)"};
inline constexpr std::string_view kWhitelistRemove{"whitelistRemove(address)"};
inline constexpr std::string_view kDonateGasFee{"donateGasFee()"};

//! selector | record
Bytes store_app(const AppRecord& r);
//! selector | u16 count | count x (u32 len | record)
Bytes store_app_batch(std::span<const AppRecord> records);
//! selector | record
Bytes store_app_baseline(const AppRecord& r);
//! selector | 20-byte address
Bytes whitelist_add(const ledger::Address& member);
Bytes whitelist_remove(const ledger::Address& member);
//! selector only
Bytes donate_gas_fee();

}  // namespace calldata

//! Membership lives in contract storage at keccak256("whitelist" | address).
ledger::Hash32 whitelist_slot(const ledger::Address& member) noexcept;
bool whitelist_contains(const ledger::CallContext& ctx, const ledger::Address& member);
//! Shared onlyOwner add/remove handling for both registry backends.
void whitelist_update(ledger::CallContext& ctx, const ledger::Address& owner, bool add);

//! The log-based app registry contract.
//!
//! storeApp and storeAppBatch emit one AppStored log per record and write no
//! storage. Duplicate detection is left to the server nodes.
class AppRegistry final : public ledger::ContractExecutor {
  public:
    static constexpr std::size_t kMaxBatch{500};

    AppRegistry(ledger::Address self, ledger::Address owner) noexcept : self_{self}, owner_{owner} {}

    void execute(ledger::CallContext& ctx) override;

    [[nodiscard]] const ledger::Address& address() const noexcept { return self_; }
    [[nodiscard]] const ledger::Address& owner() const noexcept { return owner_; }

    [[nodiscard]] bool is_whitelisted(const ledger::Ledger& chain, const ledger::Address& member) const;

    //! Exact gas a successful storeApp(r) transaction consumes. Callable by anyone,
    //! costs nothing, touches no state. Throws MalformedRecord.
    [[nodiscard]] static std::uint64_t store_app_estimate(const AppRecord& r, const ledger::GasSchedule& schedule);

  private:
    void store_app(ledger::CallContext& ctx, ByteView args);
    void store_app_batch(ledger::CallContext& ctx, ByteView args);
    static void emit_record(ledger::CallContext& ctx, ByteView encoded);

    ledger::Address self_;
    ledger::Address owner_;
};

}  // namespace appgate::registry
