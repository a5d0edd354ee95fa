// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/fixtures/bench.hpp>
#include <appgate/gateway/http_api.hpp>
#include <appgate/gateway/node.hpp>

#include <CLI11.hpp>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include <csignal>
#include <fstream>
#include <iostream>

using namespace appgate;

namespace {

httplib::Server* g_server{nullptr};

void stop_server(int) {
    if (g_server) g_server->stop();
}

std::optional<ledger::Hash32> parse_hash(const std::string& hex) {
    const auto raw{from_hex(hex)};
    if (!raw || raw->size() != 32) return std::nullopt;
    ledger::Hash32 h{};
    std::copy(raw->begin(), raw->end(), h.begin());
    return h;
}

int serve(gateway::GatewayNode& node) {
    httplib::Server server;
    gateway::mount_api(server, node, [](const std::string& line) { std::cerr << line << '\n'; });
    const auto started{std::chrono::steady_clock::now()};
    castore::PeriodicTask ticker{std::chrono::seconds{1}, [&] {
                                     node.tick(std::chrono::duration_cast<castore::Seconds>(
                                         std::chrono::steady_clock::now() - started));
                                 }};
    g_server = &server;
    std::signal(SIGINT, stop_server);
    std::signal(SIGTERM, stop_server);
    const auto& c{node.config()};
    std::cerr << "listening on " << c.listen_host << ":" << c.port << '\n';
    if (!server.listen(c.listen_host, c.port)) {
        std::cerr << "cannot listen on " << c.listen_host << ":" << c.port << '\n';
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"appgate: app delegation through a ledger-indexed content store"};
    app.require_subcommand(1);
    std::string config_path{"appgate.json"};
    app.add_option("-c,--config", config_path, "node configuration (JSON)");

    auto* serve_cmd{app.add_subcommand("serve", "run the HTTP API")};

    std::string page_url, fee_tx;
    auto* upload_cmd{app.add_subcommand("upload", "upload an app by its market page URL")};
    upload_cmd->add_option("url", page_url)->required();
    upload_cmd->add_option("--fee-tx", fee_tx, "donation transaction id (hex)");

    std::string package, version, out_path;
    auto* download_cmd{app.add_subcommand("download", "download an uploaded app")};
    download_cmd->add_option("package", package)->required();
    download_cmd->add_option("version", version)->required();
    download_cmd->add_option("-o,--output", out_path, "output file (default <package>-<version>.apk)");

    auto* sync_cmd{app.add_subcommand("sync", "pin every on-chain content id at the configured pinners")};
    auto* refresh_cmd{app.add_subcommand("refresh", "run one gateway refresh cycle")};

    std::string address;
    auto* whitelist_cmd{app.add_subcommand("whitelist", "manage upload-server accounts")};
    whitelist_cmd->require_subcommand(1);
    auto* wl_add{whitelist_cmd->add_subcommand("add", "whitelist an account")};
    auto* wl_remove{whitelist_cmd->add_subcommand("remove", "remove an account")};
    for (auto* c : {wl_add, wl_remove}) c->add_option("address", address)->required();

    std::string apk_dir;
    auto* serialdb_cmd{app.add_subcommand("serialdb", "official serial database")};
    serialdb_cmd->require_subcommand(1);
    auto* sdb_import{serialdb_cmd->add_subcommand("import", "register the signing serials of official APKs")};
    sdb_import->add_option("dir", apk_dir)->required()->check(CLI::ExistingDirectory);

    std::size_t records{140}, runs{20};
    std::uint64_t seed{2019};
    auto* bench_cmd{app.add_subcommand("bench", "measurements")};
    bench_cmd->require_subcommand(1);
    auto* bench_gas{bench_cmd->add_subcommand("gas", "gas of log storage, struct storage and batching")};
    bench_gas->add_option("--records", records);
    bench_gas->add_option("--seed", seed);
    auto* bench_timing{bench_cmd->add_subcommand("timing", "per-phase upload timing over fixture markets")};
    bench_timing->add_option("--runs", runs);

    CLI11_PARSE(app, argc, argv);

    try {
        if (bench_gas->parsed()) {
            std::cout << fixtures::format_gas(fixtures::measure_gas(records, seed));
            return 0;
        }
        if (bench_timing->parsed()) {
            const auto corpus{fixtures::build_corpus({(runs + 8) / 9 + 1, 1})};
            auto node{fixtures::corpus_node(corpus, {})};
            std::cout << fixtures::run_timing(*node, corpus, runs).table();
            return 0;
        }

        gateway::GatewayNode node{gateway::NodeConfig::load(config_path)};
        if (serve_cmd->parsed()) return serve(node);
        if (upload_cmd->parsed()) {
            gateway::UploadRequest req{page_url, std::nullopt};
            if (!fee_tx.empty()) {
                req.fee_tx = parse_hash(fee_tx);
                if (!req.fee_tx) throw std::invalid_argument{"--fee-tx must be 32 bytes of hex"};
            }
            std::cout << gateway::to_json(node.upload(req)).dump(2) << '\n';
        } else if (download_cmd->parsed()) {
            const auto got{node.download(package, version)};
            if (out_path.empty()) out_path = package + "-" + version + ".apk";
            std::ofstream out{out_path, std::ios::binary};
            out.write(reinterpret_cast<const char*>(got.bytes.data()), static_cast<std::streamsize>(got.bytes.size()));
            std::cout << got.app.record.content_id.str() << "\t" << got.served_by.name << "\t" << out_path << '\n';
        } else if (sync_cmd->parsed()) {
            const auto reports{node.sync()};
            for (std::size_t i{0}; i < reports.size(); ++i) {
                std::cout << node.config().pinners[i] << "\tnew=" << reports[i].newly_pinned.size()
                          << "\talready=" << reports[i].already_pinned.size()
                          << "\tfailed=" << reports[i].failures.size() << '\n';
                for (const auto& [cid, why] : reports[i].failures) std::cout << "  " << cid.str() << "\t" << why << '\n';
            }
        } else if (refresh_cmd->parsed()) {
            const auto failures{node.refresh_now()};
            std::cout << "refresh failures: " << failures.size() << '\n';
            for (const auto& f : failures) std::cout << "  " << f.gateway << "\t" << f.content_id.str() << "\t" << f.error << '\n';
        } else if (wl_add->parsed() || wl_remove->parsed()) {
            const auto member{ledger::Address::from_hex(address)};
            if (!member) throw std::invalid_argument{"address must be 20 bytes of hex"};
            std::cout << to_hex(node.whitelist(*member, wl_add->parsed()).tx_id) << '\n';
        } else if (sdb_import->parsed()) {
            std::vector<Bytes> apks;
            for (const auto& e : std::filesystem::recursive_directory_iterator{apk_dir}) {
                if (e.is_regular_file() && e.path().extension() == ".apk") {
                    std::ifstream in{e.path(), std::ios::binary};
                    apks.emplace_back(std::istreambuf_iterator<char>{in}, std::istreambuf_iterator<char>{});
                }
            }
            std::cout << "added " << node.import_serials(apk::build_serial_db(apks)) << " serials from " << apks.size()
                      << " apks\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
