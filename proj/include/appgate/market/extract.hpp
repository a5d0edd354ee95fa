// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <appgate/market/pattern.hpp>

namespace appgate::market {

//! PatternMismatch when page_url does not match; ExtractionFailed when the page lacks the declared element.
std::string resolve_download_url(const MarketPattern& pattern, std::string_view page_html, const std::string& page_url);

//! Lowercase 32-hex MD5, or nullopt for NoChecksum. ChecksumSourceMissing when the source is declared but empty.
std::optional<std::string> extract_checksum(const MarketPattern& pattern, std::string_view page_html,
                                            const std::string& download_url);

//! Secure-scheme form of url; host swapped when the rule names one. RewriteInapplicable on foreign hosts.
std::string https_rewrite(const RewriteRule& rule, const std::string& url);

//! github.com/<o>/<r>/blob/<ref>/<path> -> raw.githubusercontent.com/<o>/<r>/<ref>/<path>.
std::string raw_file_url(const std::string& url);

}  // namespace appgate::market
