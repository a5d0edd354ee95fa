// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/castore/http_gateway.hpp>
#include <appgate/gateway/http_api.hpp>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <charconv>

namespace appgate::gateway {

using nlohmann::json;

json to_json(const registry::StoredApp& app) {
    const auto& r{app.record};
    return {{"packageName", r.package_name},
            {"versionName", r.version},
            {"certSerial", r.cert_serial.hex()},
            {"originUrl", r.origin_url},
            {"repackVerdict", registry::to_string(r.repack_verdict)},
            {"contentId", r.content_id.str()},
            {"blockNumber", app.block_number},
            {"txId", to_hex(app.tx_id)}};
}

json to_json(const UploadResult& r) {
    json timing;
    for (std::size_t i{0}; i < kPhaseCount; ++i) timing[std::string{to_string(static_cast<Phase>(i))}] = r.timing.seconds[i];
    timing["total"] = r.timing.total;
    return {{"packageName", r.package_name},
            {"versionName", r.version_name},
            {"contentId", r.content_id.str()},
            {"verdict", {{"channel", market::to_string(r.verdict.channel)}, {"detail", r.verdict.detail}}},
            {"repackVerdict", registry::to_string(r.repack_verdict)},
            {"repackDetail", r.repack_detail},
            {"txId", to_hex(r.tx_id)},
            {"status", "pending"},
            {"originUrl", r.origin_url},
            {"marketId", r.market_id},
            {"timing", timing}};
}

json to_json(const castore::GatewayInfo& gw) {
    json j{{"name", gw.name}, {"endpoint", gw.endpoint}, {"reachable", gw.reachable}};
    j["rtt"] = gw.reachable ? json(gw.last_rtt) : json(nullptr);
    return j;
}

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code, const std::string& detail) {
    send_json(res, status, {{"error", code}, {"detail", detail}});
}

int status_of(UploadErrc code) {
    switch (code) {
        case UploadErrc::unknown_market: return 404;
        case UploadErrc::retrieval_failed: return 502;
        case UploadErrc::malformed_apk: return 422;
        case UploadErrc::security_rejected: return 422;
        case UploadErrc::duplicate: return 409;
        case UploadErrc::fee_rejected: return 402;
        case UploadErrc::chain_rejected: return 500;
    }
    return 500;
}

void send_upload_error(httplib::Response& res, const UploadError& e) {
    json body{{"error", to_string(e.code())}, {"detail", e.what()}};
    if (e.verdict) body["verdict"] = {{"channel", market::to_string(e.verdict->channel)}, {"detail", e.verdict->detail}};
    if (e.fee) body["fee"] = to_string(*e.fee);
    send_json(res, status_of(e.code()), body);
}

std::size_t query_size(const httplib::Request& req, const char* key, std::size_t fallback) {
    if (!req.has_param(key)) return fallback;
    const auto text{req.get_param_value(key)};
    std::size_t v{0};
    const auto [ptr, ec]{std::from_chars(text.data(), text.data() + text.size(), v)};
    if (ec != std::errc{} || ptr != text.data() + text.size()) throw std::invalid_argument{std::string{key} + " is not a count"};
    return v;
}

std::optional<ledger::Hash32> hash_of(const std::string& hex) {
    const auto raw{from_hex(hex)};
    if (!raw || raw->size() != 32) return std::nullopt;
    ledger::Hash32 h{};
    std::copy(raw->begin(), raw->end(), h.begin());
    return h;
}

}  // namespace

void mount_api(httplib::Server& server, GatewayNode& node, std::function<void(const std::string&)> access_log) {
    if (access_log) {
        server.set_logger([log = std::move(access_log)](const httplib::Request& req, const httplib::Response& res) {
            log(req.method + " " + req.path + " " + std::to_string(res.status));
        });
    }

    server.Post("/api/upload", [&node](const httplib::Request& req, httplib::Response& res) {
        UploadRequest up;
        try {
            const auto body = json::parse(req.body);
            up.page_url = body.at("pageUrl").get<std::string>();
            if (body.contains("feeTxId") && !body["feeTxId"].is_null()) {
                up.fee_tx = hash_of(body["feeTxId"].get<std::string>());
                if (!up.fee_tx) return send_error(res, 400, "BadRequest", "feeTxId must be 32 bytes of hex");
            }
        } catch (const json::exception& e) {
            return send_error(res, 400, "BadRequest", e.what());
        }
        if (up.page_url.empty() || !market::parse_url(up.page_url)) {
            return send_error(res, 400, "BadRequest", "pageUrl must be an absolute http(s) URL");
        }
        try {
            send_json(res, 200, to_json(node.upload(up)));
        } catch (const UploadError& e) {
            send_upload_error(res, e);
        }
    });

    server.Get("/api/apps", [&node](const httplib::Request& req, httplib::Response& res) {
        try {
            json list = json::array();
            for (const auto& app : node.list_apps(query_size(req, "offset", 0), query_size(req, "limit", 100))) {
                list.push_back(to_json(app));
            }
            send_json(res, 200, list);
        } catch (const std::invalid_argument& e) {
            send_error(res, 400, "BadRequest", e.what());
        }
    });

    server.Get(R"(/api/apps/([^/]+)/([^/]+))", [&node](const httplib::Request& req, httplib::Response& res) {
        const auto app{node.find_app(req.matches[1].str(), req.matches[2].str())};
        if (!app) return send_error(res, 404, "NotOnChain", req.matches[1].str() + " " + req.matches[2].str());
        send_json(res, 200, to_json(*app));
    });

    server.Get(R"(/api/download/([^/]+)/([^/]+))", [&node](const httplib::Request& req, httplib::Response& res) {
        try {
            const auto got{node.download(req.matches[1].str(), req.matches[2].str())};
            res.set_header("X-Content-Id", got.app.record.content_id.str());
            res.set_header("X-Served-By", got.served_by.name);
            res.set_header("Content-Disposition",
                           "attachment; filename=\"" + got.app.record.package_name + "-" + got.app.record.version + ".apk\"");
            res.set_content(std::string{got.bytes.begin(), got.bytes.end()}, "application/vnd.android.package-archive");
        } catch (const NotOnChain& e) {
            send_error(res, 404, "NotOnChain", e.what());
        } catch (const castore::CastoreError& e) {
            send_error(res, e.code() == castore::CastoreErrc::integrity_mismatch ? 502 : 404,
                       castore::to_string(e.code()), e.what());
        }
    });

    server.Get("/api/estimate", [&node](const httplib::Request& req, httplib::Response& res) {
        if (!req.has_param("pageUrl")) return send_error(res, 400, "BadRequest", "pageUrl is required");
        try {
            const auto e{node.estimate_fee(req.get_param_value("pageUrl"))};
            send_json(res, 200, {{"gas", e.gas}, {"gasPrice", e.gas_price}, {"fee", e.fee}});
        } catch (const UploadError& e) {
            send_upload_error(res, e);
        }
    });

    server.Get("/api/gateways", [&node](const httplib::Request&, httplib::Response& res) {
        json list = json::array();
        for (const auto& gw : node.gateways()) list.push_back(to_json(gw));
        send_json(res, 200, list);
    });

    const auto admin = [&node](const httplib::Request& req, httplib::Response& res) {
        const auto& token{node.config().admin_token};
        if (token.empty() || req.get_header_value("X-Admin-Token") != token) {
            send_error(res, 403, "Forbidden", "admin token required");
            return false;
        }
        return true;
    };

    server.Post("/api/admin/whitelist", [&node, admin](const httplib::Request& req, httplib::Response& res) {
        if (!admin(req, res)) return;
        try {
            const auto body = json::parse(req.body);
            const auto address{ledger::Address::from_hex(body.at("address").get<std::string>())};
            if (!address) return send_error(res, 400, "BadRequest", "address must be 20 bytes of hex");
            const auto action{body.value("action", std::string{"add"})};
            if (action != "add" && action != "remove") return send_error(res, 400, "BadRequest", "action is add or remove");
            const auto receipt{node.whitelist(*address, action == "add")};
            send_json(res, 200, {{"txId", to_hex(receipt.tx_id)}, {"gasUsed", receipt.gas_used}});
        } catch (const json::exception& e) {
            send_error(res, 400, "BadRequest", e.what());
        } catch (const registry::RegistryError& e) {
            send_error(res, 409, registry::to_string(e.code()), e.what());
        }
    });

    server.Post("/api/admin/serialdb", [&node, admin](const httplib::Request& req, httplib::Response& res) {
        if (!admin(req, res)) return;
        try {
            const auto body = json::parse(req.body);
            apk::SerialDb db;
            for (const auto& entry : body.at("entries")) {
                const auto serial{SerialNumber::from_hex(entry.at("serial").get<std::string>())};
                if (!serial) return send_error(res, 400, "BadRequest", "bad serial");
                db.add(entry.at("package").get<std::string>(), *serial);
            }
            send_json(res, 200, {{"added", node.import_serials(db)}});
        } catch (const json::exception& e) {
            send_error(res, 400, "BadRequest", e.what());
        } catch (const std::invalid_argument& e) {
            send_error(res, 400, "BadRequest", e.what());
        }
    });

    castore::mount_gateway_routes(server, node.store(), node.config().gateways.front().name);
}

}  // namespace appgate::gateway
