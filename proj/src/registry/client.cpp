// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/registry/client.hpp>

namespace appgate::registry {

ledger::Receipt RegistryClient::call(const ledger::Address& from, Bytes calldata, ledger::Wei value) {
    return chain_.submit_next(from, registry_.address(), value, std::move(calldata), registry_);
}

ledger::Receipt RegistryClient::checked(const ledger::Address& from, Bytes calldata, ledger::Wei value) {
    auto receipt{call(from, std::move(calldata), value)};
    if (!receipt.ok()) {
        const auto code{parse_revert_reason(receipt.revert_reason)};
        throw RegistryError{code.value_or(RegistryErrc::unknown_selector), receipt.revert_reason};
    }
    return receipt;
}

ledger::Receipt RegistryClient::store_app(const ledger::Address& caller, const AppRecord& r) {
    return checked(caller, calldata::store_app(r), 0);
}

ledger::Receipt RegistryClient::store_app_batch(const ledger::Address& caller, std::span<const AppRecord> records) {
    return checked(caller, calldata::store_app_batch(records), 0);
}

ledger::Receipt RegistryClient::whitelist_add(const ledger::Address& caller, const ledger::Address& member) {
    return checked(caller, calldata::whitelist_add(member), 0);
}

ledger::Receipt RegistryClient::whitelist_remove(const ledger::Address& caller, const ledger::Address& member) {
    return checked(caller, calldata::whitelist_remove(member), 0);
}

ledger::Receipt RegistryClient::donate_gas_fee(const ledger::Address& from, ledger::Wei value) {
    return checked(from, calldata::donate_gas_fee(), value);
}

namespace {

std::optional<StoredApp> to_stored(const ledger::LogMatch& m, const ledger::Address& registry) {
    if (m.log.emitter != registry || m.log.topics.size() != 2 || m.log.topics[0] != app_stored_topic()) {
        return std::nullopt;
    }
    try {
        auto record{decode(m.log.data)};
        if (identity_topic(record.package_name, record.version) != m.log.topics[1]) return std::nullopt;
        return StoredApp{std::move(record), m.block_number, m.tx_id};
    } catch (const MalformedRecord&) {
        return std::nullopt;
    }
}

}  // namespace

std::vector<StoredApp> list_apps(const ledger::Ledger& chain, const ledger::Address& registry) {
    std::vector<StoredApp> out;
    for (const auto& m : chain.find_logs(0, chain.head(), app_stored_topic())) {
        if (auto app{to_stored(m, registry)}) out.push_back(std::move(*app));
    }
    return out;
}

std::optional<StoredApp> find_app(const ledger::Ledger& chain, const ledger::Address& registry,
                                  std::string_view package_name, std::string_view version) {
    for (const auto& m : chain.find_logs(0, chain.head(), identity_topic(package_name, version))) {
        if (auto app{to_stored(m, registry)}) return app;
    }
    return std::nullopt;
}

std::size_t count_app_logs(const ledger::Ledger& chain, const ledger::Address& registry,
                           std::string_view package_name, std::string_view version) {
    std::size_t n{0};
    const auto topic{identity_topic(package_name, version)};
    for (const auto& m : chain.find_logs(0, chain.head(), topic)) {
        if (m.log.emitter == registry && !m.log.topics.empty() && m.log.topics[0] == app_stored_topic()) ++n;
    }
    return n;
}

}  // namespace appgate::registry
