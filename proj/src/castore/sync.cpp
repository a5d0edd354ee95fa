// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/castore/sync.hpp>
#include <appgate/registry/client.hpp>

namespace appgate::castore {

SyncReport consortium_sync(Network& network, const std::string& pinner, const ledger::Ledger& chain,
                           const ledger::Address& registry) {
    if (!network.online(pinner)) throw CastoreError{CastoreErrc::node_offline, pinner};
    SyncReport report;
    for (const auto& app : registry::list_apps(chain, registry)) {
        const auto& cid{app.record.content_id};
        if (report.newly_pinned.contains(cid) || report.already_pinned.contains(cid)) continue;
        try {
            if (network.pin_from_network(pinner, cid)) {
                report.newly_pinned.insert(cid);
            } else {
                report.already_pinned.insert(cid);
            }
        } catch (const CastoreError& e) {
            report.failures.emplace(cid, e.what());
        }
    }
    return report;
}

}  // namespace appgate::castore
