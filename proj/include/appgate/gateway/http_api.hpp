// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include <appgate/gateway/node.hpp>

namespace httplib {
class Server;
}

namespace appgate::gateway {

nlohmann::json to_json(const registry::StoredApp& app);
nlohmann::json to_json(const UploadResult& result);
nlohmann::json to_json(const castore::GatewayInfo& gw);

//! Mounts the JSON API and GET/HEAD /ipfs/{cid} (served through the first configured gateway).
//! access_log, when set, receives "METHOD path status" per request.
void mount_api(httplib::Server& server, GatewayNode& node,
               std::function<void(const std::string&)> access_log = nullptr);

}  // namespace appgate::gateway
