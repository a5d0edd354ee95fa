// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/market/url.hpp>

#include <algorithm>
#include <cctype>

namespace appgate::market {
namespace {

std::string lower(std::string_view s) {
    std::string out{s};
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

}  // namespace

std::optional<Url> parse_url(std::string_view text) {
    const auto sep{text.find("://")};
    if (sep == std::string_view::npos) return std::nullopt;
    Url url;
    url.scheme = lower(text.substr(0, sep));
    if (url.scheme != "http" && url.scheme != "https") return std::nullopt;
    auto rest{text.substr(sep + 3)};
    if (const auto hash{rest.find('#')}; hash != std::string_view::npos) rest = rest.substr(0, hash);
    const auto slash{rest.find_first_of("/?")};
    auto authority{rest.substr(0, slash)};
    url.path = slash == std::string_view::npos ? "/" : std::string{rest.substr(slash)};
    if (url.path.front() == '?') url.path.insert(0, "/");
    if (authority.find('@') != std::string_view::npos) return std::nullopt;
    if (const auto colon{authority.rfind(':')}; colon != std::string_view::npos) {
        url.port = std::string{authority.substr(colon + 1)};
        authority = authority.substr(0, colon);
        if (url.port.empty() || !std::all_of(url.port.begin(), url.port.end(), [](unsigned char c) { return std::isdigit(c); })) {
            return std::nullopt;
        }
    }
    url.host = lower(authority);
    if (url.host.empty() || url.host.find_first_of(" \t\r\n<>\"'") != std::string::npos) return std::nullopt;
    if (url.path.find_first_of(" \t\r\n") != std::string::npos) return std::nullopt;
    return url;
}

std::string resolve_url(const Url& base, std::string_view ref) {
    if (ref.find("://") != std::string_view::npos) return std::string{ref};
    if (ref.substr(0, 2) == "//") return base.scheme + ":" + std::string{ref};
    if (!ref.empty() && ref.front() == '/') return base.scheme + "://" + base.authority() + std::string{ref};
    std::string dir{base.path.substr(0, base.path.find('?'))};
    dir.erase(dir.rfind('/') + 1);
    return base.scheme + "://" + base.authority() + dir + std::string{ref};
}

}  // namespace appgate::market
