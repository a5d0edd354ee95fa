// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace appgate::castore {

struct GatewayInfo {
    std::string name;
    std::string endpoint;
    double last_rtt{0.0};  // seconds
    bool reachable{false};
};

class NoGatewayReachable : public std::runtime_error {
  public:
    NoGatewayReachable() : std::runtime_error{"NoGatewayReachable"} {}
};

//! Round-trip time in seconds, or nullopt when the gateway did not answer.
using RttProbe = std::function<std::optional<double>(const GatewayInfo&)>;

//! Probes every gateway (updating last_rtt / reachable in place) and returns the
//! reachable ones ordered by (rtt, name).
std::vector<GatewayInfo> rank_gateways(std::vector<GatewayInfo>& gateways, const RttProbe& probe);

//! Lowest-RTT reachable gateway; ties go to the lexicographically smaller name.
GatewayInfo select_gateway(std::vector<GatewayInfo>& gateways, const RttProbe& probe);

//! Probe answering from a fixed name -> rtt table; names not listed are unreachable.
RttProbe table_probe(std::map<std::string, double> rtts);

//! Reads a tab-separated table: name, address, location, rtt_seconds. Endpoint is https://name.
//! '#' starts a comment line. Entries come back with reachable=true.
std::vector<GatewayInfo> load_gateway_table(const std::filesystem::path& path);

}  // namespace appgate::castore
