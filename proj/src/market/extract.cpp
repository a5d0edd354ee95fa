// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/market/extract.hpp>
#include <appgate/market/html.hpp>
#include <appgate/market/url.hpp>

#include <algorithm>
#include <cctype>
#include <regex>

namespace appgate::market {
namespace {

std::string absolute(const std::string& page_url, const std::string& ref, const std::string& what) {
    const auto base{parse_url(page_url)};
    const auto resolved{resolve_url(*base, ref)};
    if (!parse_url(resolved)) throw MarketError{MarketErrc::extraction_failed, what + " is not a usable URL: " + ref};
    return resolved;
}

std::string from_selector(const std::string& selector_text, std::string_view page, const std::string& page_url) {
    const auto selector{html::Selector::parse(selector_text)};
    const auto value{html::select_attr(page, *selector)};
    if (!value || value->empty()) throw MarketError{MarketErrc::extraction_failed, "no element matches " + selector_text};
    return absolute(page_url, *value, selector_text);
}

bool is_hex(char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; }

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

std::string resolve_download_url(const MarketPattern& pattern, std::string_view page, const std::string& page_url) {
    if (!parse_url(page_url) || !pattern.matches(page_url)) {
        throw MarketError{MarketErrc::pattern_mismatch, page_url + " is not a " + pattern.market_id + " page"};
    }
    return std::visit(
        [&](const auto& rule) -> std::string {
            using R = std::decay_t<decltype(rule)>;
            if constexpr (std::is_same_v<R, HtmlAttribute>) {
                return from_selector(rule.selector, page, page_url);
            } else if constexpr (std::is_same_v<R, UrlEmbedded>) {
                const std::string text{page};
                std::smatch m;
                if (!std::regex_search(text, m, std::regex{rule.regex})) {
                    throw MarketError{MarketErrc::extraction_failed, "no embedded download URL"};
                }
                return absolute(page_url, html::decode_entities(m.size() > 1 && m[1].matched ? m[1].str() : m[0].str()),
                                "embedded URL");
            } else if constexpr (std::is_same_v<R, ScriptEmbedded>) {
                const auto value{html::script_value(page, rule.key)};
                if (!value || value->empty()) {
                    throw MarketError{MarketErrc::extraction_failed, "no script value for " + rule.key};
                }
                return absolute(page_url, *value, rule.key);
            } else if constexpr (std::is_same_v<R, HttpsRewrite>) {
                return https_rewrite(rule.rule, from_selector(rule.selector, page, page_url));
            } else {
                return raw_file_url(page_url);
            }
        },
        pattern.download_rule);
}

std::optional<std::string> extract_checksum(const MarketPattern& pattern, std::string_view page,
                                            const std::string& download_url) {
    if (std::holds_alternative<NoChecksum>(pattern.checksum_source)) return std::nullopt;
    if (const auto* script{std::get_if<ChecksumInScriptBlock>(&pattern.checksum_source)}) {
        const auto value{html::script_value(page, script->key)};
        if (!value || value->size() != 32 || !std::all_of(value->begin(), value->end(), is_hex)) {
            throw MarketError{MarketErrc::checksum_source_missing, "script key " + script->key + " holds no MD5"};
        }
        return lower(*value);
    }
    const auto url{parse_url(download_url)};
    const std::string path{url ? url->path : download_url};
    std::optional<std::string> found;
    for (std::size_t i{0}; i < path.size();) {
        if (!is_hex(path[i])) {
            ++i;
            continue;
        }
        std::size_t j{i};
        while (j < path.size() && is_hex(path[j])) ++j;
        if (j - i == 32) found = lower(path.substr(i, 32));
        i = j;
    }
    if (!found) throw MarketError{MarketErrc::checksum_source_missing, "no 32-hex token in " + download_url};
    return found;
}

std::string https_rewrite(const RewriteRule& rule, const std::string& text) {
    auto url{parse_url(text)};
    if (!url) throw MarketError{MarketErrc::rewrite_inapplicable, "not an http(s) URL: " + text};
    if (!rule.from_host.empty()) {
        if (url->host == rule.to_host && url->secure()) return url->str();
        if (url->host != rule.from_host) {
            throw MarketError{MarketErrc::rewrite_inapplicable, url->host + " is not " + rule.from_host};
        }
        url->host = rule.to_host;
    }
    if (!url->secure()) {
        url->scheme = "https";
        if (url->port == "80") url->port.clear();
    }
    return url->str();
}

std::string raw_file_url(const std::string& text) {
    auto url{parse_url(text)};
    if (!url) throw MarketError{MarketErrc::pattern_mismatch, "not an http(s) URL: " + text};
    if (url->host == "github.com") {
        static const std::regex kBlob{R"(^/([^/]+)/([^/]+)/(?:blob|raw)/(.+)$)"};
        std::smatch m;
        if (!std::regex_match(url->path, m, kBlob)) {
            throw MarketError{MarketErrc::extraction_failed, "not a file link: " + text};
        }
        return "https://raw.githubusercontent.com/" + m[1].str() + "/" + m[2].str() + "/" + m[3].str();
    }
    url->scheme = "https";
    return url->str();
}

}  // namespace appgate::market
