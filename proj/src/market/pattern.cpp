// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/market/html.hpp>
#include <appgate/market/pattern.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace appgate::market {

std::string_view to_string(MarketErrc code) noexcept {
    switch (code) {
        case MarketErrc::unknown_market: return "UnknownMarket";
        case MarketErrc::pattern_mismatch: return "PatternMismatch";
        case MarketErrc::extraction_failed: return "ExtractionFailed";
        case MarketErrc::checksum_source_missing: return "ChecksumSourceMissing";
        case MarketErrc::rewrite_inapplicable: return "RewriteInapplicable";
        case MarketErrc::retrieval_failed: return "RetrievalFailed";
    }
    return "Unknown";
}

MarketError::MarketError(MarketErrc code, const std::string& what)
    : std::runtime_error{std::string{to_string(code)} + ": " + what}, code_{code} {}

std::string_view rule_name(const DownloadUrlRule& rule) noexcept {
    constexpr std::string_view kNames[]{"htmlAttribute", "urlEmbedded", "scriptEmbedded", "httpsRewrite", "direct"};
    return kNames[rule.index()];
}

std::string_view checksum_name(const ChecksumSource& source) noexcept {
    constexpr std::string_view kNames[]{"none", "inDownloadUrl", "inScriptBlock"};
    return kNames[source.index()];
}

void MarketPattern::compile() {
    if (market_id.empty()) throw std::invalid_argument{"market pattern without id"};
    try {
        compiled_ = std::make_shared<const std::regex>(page_url_pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
        throw std::invalid_argument{market_id + ": bad page pattern: " + e.what()};
    }
    const auto check_selector = [&](const std::string& s) {
        if (!html::Selector::parse(s)) throw std::invalid_argument{market_id + ": bad selector " + s};
    };
    if (const auto* r{std::get_if<HtmlAttribute>(&download_rule)}) check_selector(r->selector);
    if (const auto* r{std::get_if<HttpsRewrite>(&download_rule)}) check_selector(r->selector);
    if (const auto* r{std::get_if<UrlEmbedded>(&download_rule)}) {
        try {
            std::regex{r->regex};
        } catch (const std::regex_error& e) {
            throw std::invalid_argument{market_id + ": bad urlEmbedded regex: " + e.what()};
        }
    }
    if (const auto* r{std::get_if<ScriptEmbedded>(&download_rule)}; r && r->key.empty()) {
        throw std::invalid_argument{market_id + ": scriptEmbedded without key"};
    }
    if (const auto* c{std::get_if<ChecksumInScriptBlock>(&checksum_source)}; c && c->key.empty()) {
        throw std::invalid_argument{market_id + ": inScriptBlock without key"};
    }
}

bool MarketPattern::matches(const std::string& page_url) const {
    if (!compiled_) throw std::logic_error{"market pattern " + market_id + " used before compile()"};
    return std::regex_match(page_url, *compiled_);
}

void PatternRegistry::add(MarketPattern pattern) {
    pattern.compile();
    if (by_id(pattern.market_id) != nullptr) throw std::invalid_argument{"duplicate market id " + pattern.market_id};
    patterns_.push_back(std::move(pattern));
}

const MarketPattern* PatternRegistry::find(const std::string& page_url) const noexcept {
    for (const auto& p : patterns_) {
        if (p.matches(page_url)) return &p;
    }
    return nullptr;
}

const MarketPattern& PatternRegistry::match(const std::string& page_url) const {
    const auto* p{find(page_url)};
    if (p == nullptr) throw MarketError{MarketErrc::unknown_market, page_url};
    return *p;
}

const MarketPattern* PatternRegistry::by_id(std::string_view market_id) const noexcept {
    for (const auto& p : patterns_) {
        if (p.market_id == market_id) return &p;
    }
    return nullptr;
}

namespace {

using nlohmann::json;

DownloadUrlRule parse_rule(const json& j) {
    const auto kind{j.at("rule").get<std::string>()};
    if (kind == "htmlAttribute") return HtmlAttribute{j.at("selector").get<std::string>()};
    if (kind == "urlEmbedded") return j.contains("regex") ? UrlEmbedded{j["regex"].get<std::string>()} : UrlEmbedded{};
    if (kind == "scriptEmbedded") return ScriptEmbedded{j.at("key").get<std::string>()};
    if (kind == "httpsRewrite") {
        RewriteRule rule;
        if (j.contains("fromHost")) rule.from_host = j["fromHost"].get<std::string>();
        if (j.contains("toHost")) rule.to_host = j["toHost"].get<std::string>();
        return HttpsRewrite{j.at("selector").get<std::string>(), rule};
    }
    if (kind == "direct") return Direct{};
    throw std::invalid_argument{"unknown download rule " + kind};
}

ChecksumSource parse_checksum(const json& j) {
    const auto kind{j.at("source").get<std::string>()};
    if (kind == "none") return NoChecksum{};
    if (kind == "inDownloadUrl") return ChecksumInDownloadUrl{};
    if (kind == "inScriptBlock") return ChecksumInScriptBlock{j.at("key").get<std::string>()};
    throw std::invalid_argument{"unknown checksum source " + kind};
}

}  // namespace

PatternRegistry PatternRegistry::parse(std::string_view json_text) {
    PatternRegistry registry;
    try {
        const auto doc = json::parse(json_text);
        for (const auto& m : doc.at("markets")) {
            MarketPattern p;
            p.market_id = m.at("id").get<std::string>();
            p.page_url_pattern = m.at("pageUrlPattern").get<std::string>();
            p.download_rule = parse_rule(m.at("download"));
            p.checksum_source = m.contains("checksum") ? parse_checksum(m["checksum"]) : ChecksumSource{NoChecksum{}};
            p.transport_secure = m.value("transportSecure", false);
            registry.add(std::move(p));
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument{std::string{"market registry: "} + e.what()};
    }
    return registry;
}

PatternRegistry PatternRegistry::load(const std::filesystem::path& path) {
    std::ifstream in{path};
    if (!in) throw std::runtime_error{"cannot open market registry " + path.string()};
    std::ostringstream text;
    text << in.rdbuf();
    return parse(text.str());
}

}  // namespace appgate::market
