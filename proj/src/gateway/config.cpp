// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/gateway/config.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace appgate::gateway {
namespace {

using nlohmann::json;

AccountConfig account(const json& j, AccountConfig fallback) {
    fallback.label = j.value("label", fallback.label);
    fallback.balance = j.value("balance", fallback.balance);
    return fallback;
}

std::filesystem::path path_at(const json& j, const char* key, const std::filesystem::path& base) {
    if (!j.contains(key)) return {};
    std::filesystem::path p{j[key].get<std::string>()};
    return p.is_relative() && !base.empty() ? base / p : p;
}

}  // namespace

NodeConfig NodeConfig::parse(std::string_view text, const std::filesystem::path& base) {
    NodeConfig c;
    try {
        const auto j = json::parse(text);
        if (j.contains("accounts")) {
            const auto& a = j["accounts"];
            if (a.contains("owner")) c.owner = account(a["owner"], c.owner);
            if (a.contains("server")) c.server = account(a["server"], c.server);
            for (const auto& extra : a.value("extra", json::array())) c.accounts.push_back(account(extra, {}));
        }
        c.registry_label = j.value("registryLabel", c.registry_label);
        c.gas_price = j.value("gasPrice", c.gas_price);
        c.whitelist_server = j.value("whitelistServer", c.whitelist_server);
        if (j.contains("fees")) c.fees_enabled = j["fees"].value("enabled", false);
        c.market_registry = path_at(j, "markets", base);
        c.known_apps = path_at(j, "knownApps", base);
        c.developer_serials = path_at(j, "developerSerials", base);
        c.serial_db = path_at(j, "serialDb", base);
        c.data_dir = path_at(j, "dataDir", base);
        if (j.contains("gateways")) {
            c.gateways.clear();
            for (const auto& g : j["gateways"]) {
                GatewayConfig gw{g.at("name").get<std::string>(), std::nullopt};
                if (g.contains("rtt") && !g["rtt"].is_null()) gw.rtt = g["rtt"].get<double>();
                c.gateways.push_back(std::move(gw));
            }
        }
        if (j.contains("pinners")) c.pinners = j["pinners"].get<std::vector<std::string>>();
        c.ttl = castore::Seconds{j.value("ttlSeconds", c.ttl.count())};
        c.refresh_period = castore::Seconds{j.value("refreshSeconds", c.refresh_period.count())};
        if (j.contains("listen")) {
            c.listen_host = j["listen"].value("host", c.listen_host);
            c.port = j["listen"].value("port", c.port);
        }
        c.admin_token = j.value("adminToken", c.admin_token);
        if (j.contains("hostAliases")) c.host_aliases = j["hostAliases"].get<std::map<std::string, std::string>>();
        c.per_host_connections = j.value("perHostConnections", c.per_host_connections);
    } catch (const json::exception& e) {
        throw std::invalid_argument{std::string{"config: "} + e.what()};
    }
    if (c.gateways.empty()) throw std::invalid_argument{"config: at least one gateway is required"};
    if (c.refresh_period.count() <= 0 || c.ttl.count() <= 0) throw std::invalid_argument{"config: periods must be positive"};
    return c;
}

NodeConfig NodeConfig::load(const std::filesystem::path& path) {
    std::ifstream in{path};
    if (!in) throw std::runtime_error{"cannot open config " + path.string()};
    std::ostringstream text;
    text << in.rdbuf();
    return parse(text.str(), path.parent_path());
}

}  // namespace appgate::gateway
