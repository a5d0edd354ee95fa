// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include <appgate/apk/errors.hpp>
#include <appgate/bytes.hpp>
#include <appgate/serial_number.hpp>

namespace appgate::apk {

//! Cleartext manifest: "key=value" lines, '#' comments; package and versionName required.
inline constexpr std::string_view kManifestEntry{"AndroidManifest.properties"};

struct ApkSummary {
    std::string package_name;
    std::string version_name;
    SerialNumber cert_serial;

    bool operator==(const ApkSummary&) const = default;
};

ApkSummary parse_apk(ByteView bytes);

//! True for META-INF/<name>.RSA, .DSA or .EC directly under META-INF.
bool is_signature_block(std::string_view entry_name) noexcept;

}  // namespace appgate::apk
