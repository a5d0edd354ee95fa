// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/market/verify.hpp>

#include <fstream>

namespace appgate::market {

std::string_view to_string(Channel c) noexcept {
    switch (c) {
        case Channel::https_direct: return "httpsDirect";
        case Channel::checksum_verified: return "checksumVerified";
        case Channel::https_rewritten: return "httpsRewritten";
        case Channel::known_app_match: return "knownAppMatch";
        case Channel::known_developer_match: return "knownDeveloperMatch";
        case Channel::unverified_warning: return "unverifiedWarning";
        case Channel::rejected: return "rejected";
    }
    return "rejected";
}

std::optional<Channel> parse_channel(std::string_view s) noexcept {
    for (int i{0}; i <= static_cast<int>(Channel::rejected); ++i) {
        if (to_string(static_cast<Channel>(i)) == s) return static_cast<Channel>(i);
    }
    return std::nullopt;
}

namespace {

template <typename T, typename Parse>
std::set<T> load_lines(const std::filesystem::path& path, Parse parse) {
    std::set<T> out;
    std::ifstream in{path};
    std::string line;
    std::size_t lineno{0};
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto value{parse(line)};
        if (!value) throw std::runtime_error{path.string() + ":" + std::to_string(lineno) + ": malformed entry"};
        out.insert(*value);
    }
    return out;
}

}  // namespace

std::set<Hash256> TrustAnchors::load_known_apps(const std::filesystem::path& path) {
    return load_lines<Hash256>(path, [](const std::string& line) -> std::optional<Hash256> {
        const auto bytes{from_hex(line)};
        if (!bytes || bytes->size() != 32) return std::nullopt;
        Hash256 h{};
        std::copy(bytes->begin(), bytes->end(), h.begin());
        return h;
    });
}

std::set<SerialNumber> TrustAnchors::load_developer_serials(const std::filesystem::path& path) {
    return load_lines<SerialNumber>(path, [](const std::string& line) { return SerialNumber::from_hex(line); });
}

SecurityVerdict verify_checksum(const RetrievedApp& app) {
    const auto computed{to_hex(md5(app.bytes))};
    const auto& declared{app.declared_checksum.value()};
    if (computed == declared) return {Channel::checksum_verified, "md5 " + computed + " matches the page"};
    return {Channel::rejected, "checksum mismatch: page declares " + declared + ", downloaded file has " + computed};
}

SecurityVerdict fallback_verify(const RetrievedApp& app, const std::set<Hash256>& known_apps,
                                const std::set<SerialNumber>& developer_serials,
                                const std::optional<SerialNumber>& cert_serial) {
    const auto digest{sha256(app.bytes)};
    if (known_apps.contains(digest)) return {Channel::known_app_match, "sha256 " + to_hex(digest) + " is a known app"};
    if (cert_serial && developer_serials.contains(*cert_serial)) {
        return {Channel::known_developer_match, "signer " + cert_serial->hex() + " is a known developer"};
    }
    return {Channel::unverified_warning, "retrieved over an insecure transport without a checksum; integrity unverified"};
}

SecurityVerdict assess(const RetrievedApp& app, const TrustAnchors& anchors,
                       const std::optional<SerialNumber>& cert_serial) {
    if (app.declared_checksum) return verify_checksum(app);
    if (app.transport_secure) {
        return app.rewritten ? SecurityVerdict{Channel::https_rewritten, "fetched over a rewritten https URL"}
                             : SecurityVerdict{Channel::https_direct, "fetched over https"};
    }
    return fallback_verify(app, anchors.known_apps, anchors.developer_serials, cert_serial);
}

}  // namespace appgate::market
