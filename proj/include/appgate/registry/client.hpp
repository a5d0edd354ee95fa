// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <vector>

#include <appgate/registry/registry.hpp>

namespace appgate::registry {

//! An AppRecord recovered from an AppStored log.
struct StoredApp {
    AppRecord record;
    std::uint64_t block_number{0};
    ledger::Hash32 tx_id{};
};

//! Sends registry transactions with automatic nonces. A reverted call is still
//! recorded on chain and then surfaces as RegistryError.
class RegistryClient {
  public:
    RegistryClient(ledger::Ledger& chain, AppRegistry& registry) noexcept : chain_{chain}, registry_{registry} {}

    ledger::Receipt store_app(const ledger::Address& caller, const AppRecord& r);
    ledger::Receipt store_app_batch(const ledger::Address& caller, std::span<const AppRecord> records);
    ledger::Receipt whitelist_add(const ledger::Address& caller, const ledger::Address& member);
    ledger::Receipt whitelist_remove(const ledger::Address& caller, const ledger::Address& member);
    ledger::Receipt donate_gas_fee(const ledger::Address& from, ledger::Wei value);

    //! Raw call: returns the receipt as is, reverted or not.
    ledger::Receipt call(const ledger::Address& from, Bytes calldata, ledger::Wei value = 0);

    [[nodiscard]] std::uint64_t store_app_estimate(const AppRecord& r) const {
        return AppRegistry::store_app_estimate(r, chain_.schedule());
    }

    [[nodiscard]] ledger::Ledger& chain() const noexcept { return chain_; }
    [[nodiscard]] AppRegistry& registry() const noexcept { return registry_; }

  private:
    ledger::Receipt checked(const ledger::Address& from, Bytes calldata, ledger::Wei value);

    ledger::Ledger& chain_;
    AppRegistry& registry_;
};

//! Every well-formed AppStored record emitted by registry, in chain order.
//! Logs from other emitters or with undecodable data are skipped.
std::vector<StoredApp> list_apps(const ledger::Ledger& chain, const ledger::Address& registry);

//! The earliest record stored for (package, version), found through the
//! identity-topic bloom path. Gas-free.
std::optional<StoredApp> find_app(const ledger::Ledger& chain, const ledger::Address& registry,
                                  std::string_view package_name, std::string_view version);

//! Number of AppStored logs for (package, version), regardless of data validity.
std::size_t count_app_logs(const ledger::Ledger& chain, const ledger::Address& registry,
                           std::string_view package_name, std::string_view version);

}  // namespace appgate::registry
