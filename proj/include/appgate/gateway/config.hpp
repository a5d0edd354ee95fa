// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <appgate/castore/network.hpp>
#include <appgate/ledger/address.hpp>

namespace appgate::gateway {

struct AccountConfig {
    std::string label;
    ledger::Wei balance{0};

    [[nodiscard]] ledger::Address address() const { return ledger::Address::derive(label); }
};

struct GatewayConfig {
    std::string name;
    //! Simulated RTT in seconds used by the default probe; absent means unreachable.
    std::optional<double> rtt;
};

struct NodeConfig {
    AccountConfig owner{"appgate.owner", 1'000'000'000'000'000'000};
    AccountConfig server{"appgate.server", 1'000'000'000'000'000'000};
    std::string registry_label{"appgate.registry"};
    //! Extra funded accounts (donors in fee tests).
    std::vector<AccountConfig> accounts;
    ledger::Wei gas_price{1'000'000'000};
    bool whitelist_server{true};

    bool fees_enabled{false};

    std::filesystem::path market_registry;
    std::filesystem::path known_apps;
    std::filesystem::path developer_serials;
    std::filesystem::path serial_db;
    //! Empty: everything in memory.
    std::filesystem::path data_dir;

    std::vector<GatewayConfig> gateways{{"gw-1", 0.05}, {"gw-2", 0.09}};
    std::vector<std::string> pinners{"pinner-1"};
    castore::Seconds ttl{castore::kDefaultTtl};
    castore::Seconds refresh_period{castore::kDefaultRefreshPeriod};

    std::string listen_host{"127.0.0.1"};
    int port{8080};
    std::string admin_token;

    //! Market hosts served by a local fixture server: host -> "ip:port".
    std::map<std::string, std::string> host_aliases;
    std::size_t per_host_connections{4};

    [[nodiscard]] ledger::Address registry_address() const { return ledger::Address::derive(registry_label); }

    //! Relative paths resolve against base_dir.
    static NodeConfig parse(std::string_view json_text, const std::filesystem::path& base_dir = {});
    static NodeConfig load(const std::filesystem::path& path);
};

}  // namespace appgate::gateway
