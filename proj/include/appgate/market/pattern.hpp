// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <variant>
#include <vector>

#include <appgate/market/errors.hpp>

namespace appgate::market {

struct HtmlAttribute {
    std::string selector;
};

//! First match of regex in the page; group 1 when present, else the whole match.
struct UrlEmbedded {
    std::string regex{R"(https?://[^"'\s<>]+\.apk)"};
};

struct ScriptEmbedded {
    std::string key;
};

//! Empty hosts mean a plain scheme swap.
struct RewriteRule {
    std::string from_host;
    std::string to_host;
};

struct HttpsRewrite {
    std::string selector;
    RewriteRule rule;
};

//! The page URL is the file (code-hosting links).
struct Direct {};

using DownloadUrlRule = std::variant<HtmlAttribute, UrlEmbedded, ScriptEmbedded, HttpsRewrite, Direct>;

struct NoChecksum {};
struct ChecksumInDownloadUrl {};
struct ChecksumInScriptBlock {
    std::string key;
};

using ChecksumSource = std::variant<NoChecksum, ChecksumInDownloadUrl, ChecksumInScriptBlock>;

struct MarketPattern {
    std::string market_id;
    std::string page_url_pattern;
    DownloadUrlRule download_rule;
    ChecksumSource checksum_source;
    bool transport_secure{false};

    [[nodiscard]] bool matches(const std::string& page_url) const;
    [[nodiscard]] bool has_checksum() const noexcept { return !std::holds_alternative<NoChecksum>(checksum_source); }
    [[nodiscard]] bool rewrites() const noexcept { return std::holds_alternative<HttpsRewrite>(download_rule); }
    //! Bytes arrive over a secure transport, either natively or after rewriting.
    [[nodiscard]] bool secure_after_rule() const noexcept { return transport_secure || rewrites(); }

    //! Compiles the page pattern; throws std::invalid_argument on bad regexes or selectors.
    void compile();

  private:
    std::shared_ptr<const std::regex> compiled_;
};

std::string_view rule_name(const DownloadUrlRule&) noexcept;
std::string_view checksum_name(const ChecksumSource&) noexcept;

class PatternRegistry {
  public:
    void add(MarketPattern pattern);

    //! Throws MarketError{unknown_market} when nothing matches.
    [[nodiscard]] const MarketPattern& match(const std::string& page_url) const;
    [[nodiscard]] const MarketPattern* find(const std::string& page_url) const noexcept;
    [[nodiscard]] const MarketPattern* by_id(std::string_view market_id) const noexcept;
    [[nodiscard]] const std::vector<MarketPattern>& patterns() const noexcept { return patterns_; }

    static PatternRegistry parse(std::string_view json_text);
    static PatternRegistry load(const std::filesystem::path& path);

  private:
    std::vector<MarketPattern> patterns_;
};

}  // namespace appgate::market
