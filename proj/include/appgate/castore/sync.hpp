// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <set>
#include <string>

#include <appgate/castore/network.hpp>
#include <appgate/ledger/ledger.hpp>

namespace appgate::castore {

struct SyncReport {
    std::set<ContentId> newly_pinned;
    std::set<ContentId> already_pinned;
    std::map<ContentId, std::string> failures;
};

//! Pins at pinner every content id referenced by the registry's AppStored logs.
//! Idempotent; per-id failures are reported and do not stop the run.
//! Throws CastoreError{node_offline} when the pinner itself is down.
SyncReport consortium_sync(Network& network, const std::string& pinner, const ledger::Ledger& chain,
                           const ledger::Address& registry);

}  // namespace appgate::castore
