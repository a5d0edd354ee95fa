// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/castore/http_gateway.hpp>

#include <httplib.h>

namespace appgate::castore {

void mount_gateway_routes(httplib::Server& server, Network& network, const std::string& node) {
    server.Get(R"(/ipfs/([A-Za-z0-9]+))", [&network, node](const httplib::Request& req, httplib::Response& res) {
        const auto cid{ContentId::parse(req.matches[1].str())};
        if (!cid) {
            res.status = 400;
            res.set_content("malformed content id", "text/plain");
            return;
        }
        try {
            const auto bytes{network.fetch(*cid, node)};
            res.set_content(std::string{bytes.begin(), bytes.end()}, "application/octet-stream");
        } catch (const CastoreError& e) {
            switch (e.code()) {
                case CastoreErrc::not_found: res.status = 404; break;
                case CastoreErrc::node_offline: res.status = 503; break;
                default: res.status = 502; break;
            }
            res.set_content(e.what(), "text/plain");
        }
    });
}

namespace {

httplib::Client client_for(const std::string& endpoint, std::chrono::milliseconds timeout) {
    httplib::Client cli{endpoint};
    cli.set_connection_timeout(timeout);
    cli.set_read_timeout(timeout);
    return cli;
}

}  // namespace

Bytes HttpGatewayClient::fetch(const std::string& endpoint, const ContentId& cid) const {
    auto cli{client_for(endpoint, timeout_)};
    const auto res{cli.Get("/ipfs/" + cid.str())};
    if (!res) throw CastoreError{CastoreErrc::node_offline, endpoint};
    if (res->status == 404) throw CastoreError{CastoreErrc::not_found, cid.str() + " at " + endpoint};
    if (res->status != 200) {
        throw CastoreError{CastoreErrc::not_found, endpoint + " answered " + std::to_string(res->status)};
    }
    Bytes bytes{res->body.begin(), res->body.end()};
    if (!cid.certifies(bytes)) throw CastoreError{CastoreErrc::integrity_mismatch, cid.str() + " from " + endpoint};
    return bytes;
}

std::optional<double> HttpGatewayClient::probe(const std::string& endpoint, const ContentId& cid) const {
    auto cli{client_for(endpoint, timeout_)};
    const auto start{std::chrono::steady_clock::now()};
    const auto res{cli.Head("/ipfs/" + cid.str())};
    if (!res) return std::nullopt;
    const std::chrono::duration<double> rtt{std::chrono::steady_clock::now() - start};
    return std::max(rtt.count(), 1e-9);
}

RttProbe HttpGatewayClient::as_probe(const ContentId& cid) const {
    return [this, cid](const GatewayInfo& gw) { return probe(gw.endpoint, cid); };
}

}  // namespace appgate::castore
