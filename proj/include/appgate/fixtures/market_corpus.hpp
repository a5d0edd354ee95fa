// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <appgate/apk/serial_db.hpp>
#include <appgate/market/fetcher.hpp>
#include <appgate/market/verify.hpp>

namespace appgate::fixtures {

//! The page declaring this digest serves bytes that do not match it.
inline constexpr std::string_view kMitmDeclaredMd5{"f5580d6a58bb9d97c27929f1a9c585f1"};
inline constexpr std::uint64_t kReferenceSerial{0x706a633e};

struct FixtureApp {
    std::string market_id;
    std::string slug;
    std::string page_url;
    std::string download_url;
    std::string package_name;
    std::string version_name;
    SerialNumber serial;
    Bytes apk;
    std::optional<std::string> declared_md5;
    market::Channel expected_channel{market::Channel::rejected};
    registry::RepackVerdict expected_repack{registry::RepackVerdict::unchecked};
    bool tampered{false};
};

struct CorpusOptions {
    std::size_t apps_per_market{3};
    std::uint64_t seed{1};
};

struct Corpus {
    std::vector<FixtureApp> apps;
    //! resource_key -> body, pages and APKs alike.
    std::map<std::string, Bytes> resources;
    apk::SerialDb official;
    market::TrustAnchors anchors;

    [[nodiscard]] std::shared_ptr<market::MapFetcher> fetcher() const;
    [[nodiscard]] const FixtureApp& get(std::string_view market_id, std::string_view slug) const;
    [[nodiscard]] std::vector<const FixtureApp*> admissible() const;
};

//! Registry for the fixture markets: seven insecure ones (three with URL checksums, one with a
//! script-block checksum, one HTTPS-rewritable, two without checksums), a code-hosting direct
//! pattern and one HTTPS market.
std::string fixture_markets_json();

Corpus build_corpus(const CorpusOptions& options = {});

//! Layout: markets.json, known_apps.txt, developer_serials.txt, serialdb.tsv and
//! <market>/<slug>/{page.html, app.apk, meta.json}.
void write_corpus(const Corpus& corpus, const std::filesystem::path& dir);
//! Rebuilds the resource map from a written corpus.
std::map<std::string, Bytes> load_corpus_resources(const std::filesystem::path& dir);

}  // namespace appgate::fixtures
