// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/apk/apk.hpp>
#include <appgate/fixtures/market_corpus.hpp>
#include <appgate/market/extract.hpp>
#include <appgate/market/fetcher.hpp>
#include <appgate/market/pattern.hpp>
#include <appgate/market/verify.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace appgate;

int main(int argc, char** argv) {
    CLI::App app{"market-connect: dry-run download URL extraction and verification"};
    app.require_subcommand(1);
    std::string page_url, markets_path, fixtures_dir;
    auto* test{app.add_subcommand("test", "resolve, fetch and verify one page URL without storing anything")};
    test->add_option("pageUrl", page_url)->required();
    test->add_option("--markets", markets_path, "market registry JSON (default: the fixture markets)");
    test->add_option("--fixtures", fixtures_dir, "serve pages from a fixture corpus directory instead of HTTP")
        ->check(CLI::ExistingDirectory);
    CLI11_PARSE(app, argc, argv);

    try {
        const auto registry{markets_path.empty() ? market::PatternRegistry::parse(fixtures::fixture_markets_json())
                                                 : market::PatternRegistry::load(markets_path)};
        std::unique_ptr<market::Fetcher> fetcher;
        market::TrustAnchors anchors;
        if (!fixtures_dir.empty()) {
            auto map{std::make_unique<market::MapFetcher>()};
            for (auto& [key, body] : fixtures::load_corpus_resources(fixtures_dir)) map->put("http://" + key, std::move(body));
            fetcher = std::move(map);
            anchors.known_apps = market::TrustAnchors::load_known_apps(std::filesystem::path{fixtures_dir} / "known_apps.txt");
            anchors.developer_serials =
                market::TrustAnchors::load_developer_serials(std::filesystem::path{fixtures_dir} / "developer_serials.txt");
        } else {
            fetcher = std::make_unique<market::HttpFetcher>();
        }

        const auto& pattern{registry.match(page_url)};
        std::cout << "market\t" << pattern.market_id << "\nrule\t" << market::rule_name(pattern.download_rule)
                  << "\nchecksumSource\t" << market::checksum_name(pattern.checksum_source) << '\n';
        std::string page;
        if (!std::holds_alternative<market::Direct>(pattern.download_rule)) page = to_string(fetcher->get(page_url));
        const auto download_url{market::resolve_download_url(pattern, page, page_url)};
        std::cout << "downloadUrl\t" << download_url << '\n';

        market::RetrievedApp retrieved;
        retrieved.origin_page_url = page_url;
        retrieved.download_url = download_url;
        retrieved.rewritten = pattern.rewrites();
        const auto url{market::parse_url(download_url)};
        retrieved.transport_secure = pattern.secure_after_rule() && url && url->secure();
        retrieved.declared_checksum = market::extract_checksum(pattern, page, download_url);
        std::cout << "declaredMd5\t" << retrieved.declared_checksum.value_or("-") << '\n';
        retrieved.bytes = fetcher->get(download_url);
        std::cout << "bytes\t" << retrieved.bytes.size() << "\ncomputedMd5\t" << to_hex(md5(retrieved.bytes)) << '\n';

        std::optional<SerialNumber> serial;
        try {
            serial = apk::parse_apk(retrieved.bytes).cert_serial;
        } catch (const apk::ApkError& e) {
            std::cout << "apk\t" << e.what() << '\n';
        }
        const auto verdict{market::assess(retrieved, anchors, serial)};
        std::cout << "verdict\t" << market::to_string(verdict.channel) << "\ndetail\t" << verdict.detail << '\n';
        return verdict.admits() ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
