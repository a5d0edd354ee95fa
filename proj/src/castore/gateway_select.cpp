// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/castore/gateway_select.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace appgate::castore {

std::vector<GatewayInfo> rank_gateways(std::vector<GatewayInfo>& gateways, const RttProbe& probe) {
    std::vector<GatewayInfo> ranked;
    for (auto& gw : gateways) {
        const auto rtt{probe(gw)};
        gw.reachable = rtt.has_value() && *rtt > 0.0;
        if (gw.reachable) {
            gw.last_rtt = *rtt;
            ranked.push_back(gw);
        }
    }
    std::sort(ranked.begin(), ranked.end(), [](const GatewayInfo& a, const GatewayInfo& b) {
        return a.last_rtt != b.last_rtt ? a.last_rtt < b.last_rtt : a.name < b.name;
    });
    return ranked;
}

GatewayInfo select_gateway(std::vector<GatewayInfo>& gateways, const RttProbe& probe) {
    const auto ranked{rank_gateways(gateways, probe)};
    if (ranked.empty()) throw NoGatewayReachable{};
    return ranked.front();
}

RttProbe table_probe(std::map<std::string, double> rtts) {
    return [rtts = std::move(rtts)](const GatewayInfo& gw) -> std::optional<double> {
        const auto it{rtts.find(gw.name)};
        if (it == rtts.end()) return std::nullopt;
        return it->second;
    };
}

std::vector<GatewayInfo> load_gateway_table(const std::filesystem::path& path) {
    std::ifstream in{path};
    if (!in) throw std::runtime_error{"cannot open gateway table " + path.string()};
    std::vector<GatewayInfo> out;
    std::string line;
    std::size_t lineno{0};
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> fields;
        std::istringstream in_line{line};
        for (std::string f; std::getline(in_line, f, '\t');) fields.push_back(f);
        GatewayInfo gw;
        std::size_t used{0};
        if (fields.size() == 4) {
            try {
                gw.last_rtt = std::stod(fields[3], &used);
            } catch (const std::exception&) {
                used = 0;
            }
        }
        if (used == 0 || used != fields[3].size()) {
            throw std::runtime_error{path.string() + ":" + std::to_string(lineno) + ": expected name, address, location, rtt"};
        }
        gw.name = fields[0];
        gw.endpoint = "https://" + fields[0];
        gw.reachable = true;
        out.push_back(std::move(gw));
    }
    return out;
}

}  // namespace appgate::castore
