// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>

#include <appgate/bytes.hpp>
#include <appgate/crypto.hpp>
#include <appgate/serial_number.hpp>

namespace appgate::market {

enum class Channel {
    https_direct,
    checksum_verified,
    https_rewritten,
    known_app_match,
    known_developer_match,
    unverified_warning,
    rejected,
};

std::string_view to_string(Channel) noexcept;
std::optional<Channel> parse_channel(std::string_view) noexcept;

struct SecurityVerdict {
    Channel channel{Channel::rejected};
    std::string detail;

    [[nodiscard]] bool admits() const noexcept { return channel != Channel::rejected; }
    [[nodiscard]] bool warning() const noexcept { return channel == Channel::unverified_warning; }
};

struct RetrievedApp {
    Bytes bytes;
    std::string origin_page_url;
    std::string download_url;
    std::optional<std::string> declared_checksum;
    bool transport_secure{false};
    bool rewritten{false};
};

//! Stand-ins for an external app repository (SHA-256 digests) and a developer-certificate allowlist.
struct TrustAnchors {
    std::set<Hash256> known_apps;
    std::set<SerialNumber> developer_serials;

    //! One lowercase hex digest or serial per line; '#' comments. Missing files are empty sets.
    static std::set<Hash256> load_known_apps(const std::filesystem::path& path);
    static std::set<SerialNumber> load_developer_serials(const std::filesystem::path& path);
};

SecurityVerdict verify_checksum(const RetrievedApp& app);

SecurityVerdict fallback_verify(const RetrievedApp& app, const std::set<Hash256>& known_apps,
                                const std::set<SerialNumber>& developer_serials,
                                const std::optional<SerialNumber>& cert_serial);

//! Total over (transport_secure, declared checksum, fallback outcome).
SecurityVerdict assess(const RetrievedApp& app, const TrustAnchors& anchors,
                       const std::optional<SerialNumber>& cert_serial);

}  // namespace appgate::market
