// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <optional>
#include <string>

#include <appgate/castore/gateway_select.hpp>
#include <appgate/castore/network.hpp>

namespace httplib {
class Server;
}

namespace appgate::castore {

//! Serves GET /ipfs/{cid} (raw bytes) and HEAD /ipfs/{cid} on behalf of node.
//! 404 when unavailable, 400 on a malformed id, 502 on an integrity failure.
void mount_gateway_routes(httplib::Server& server, Network& network, const std::string& node);

//! Client side of the same HTTP shape, for gateways reachable over the network.
class HttpGatewayClient {
  public:
    explicit HttpGatewayClient(std::chrono::milliseconds timeout = std::chrono::seconds{5}) : timeout_{timeout} {}

    //! Throws CastoreError{not_found | integrity_mismatch} on failure.
    Bytes fetch(const std::string& endpoint, const ContentId& cid) const;
    //! HEAD round trip in seconds; nullopt when the gateway does not answer.
    std::optional<double> probe(const std::string& endpoint, const ContentId& cid) const;

    //! RttProbe that HEADs cid at each gateway's endpoint.
    RttProbe as_probe(const ContentId& cid) const;

  private:
    std::chrono::milliseconds timeout_;
};

}  // namespace appgate::castore
