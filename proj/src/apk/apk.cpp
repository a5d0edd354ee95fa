// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/apk/apk.hpp>
#include <appgate/apk/der.hpp>
#include <appgate/apk/zip.hpp>

#include <sstream>

namespace appgate::apk {

bool is_signature_block(std::string_view name) noexcept {
    constexpr std::string_view kDir{"META-INF/"};
    if (name.substr(0, kDir.size()) != kDir) return false;
    const auto rest{name.substr(kDir.size())};
    if (rest.find('/') != std::string_view::npos) return false;
    for (const std::string_view suffix : {".RSA", ".DSA", ".EC"}) {
        if (rest.size() > suffix.size() && rest.substr(rest.size() - suffix.size()) == suffix) return true;
    }
    return false;
}

namespace {

std::string trim(std::string s) {
    const auto first{s.find_first_not_of(" \t\r")};
    if (first == std::string::npos) return {};
    const auto last{s.find_last_not_of(" \t\r")};
    return s.substr(first, last - first + 1);
}

void read_manifest(const ZipEntry& entry, ApkSummary& out) {
    std::istringstream in{std::string{entry.data.begin(), entry.data.end()}};
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto eq{line.find('=')};
        if (eq == std::string::npos) continue;
        const auto key{trim(line.substr(0, eq))};
        auto value{trim(line.substr(eq + 1))};
        if (key == "package") out.package_name = std::move(value);
        if (key == "versionName") out.version_name = std::move(value);
    }
    if (out.package_name.empty()) throw ApkError{ApkErrc::missing_manifest, "manifest lacks package"};
    if (out.version_name.empty()) throw ApkError{ApkErrc::missing_manifest, "manifest lacks versionName"};
}

}  // namespace

ApkSummary parse_apk(ByteView bytes) {
    const auto archive{ZipArchive::parse(bytes)};
    const auto* manifest{archive.find(kManifestEntry)};
    if (manifest == nullptr) throw ApkError{ApkErrc::missing_manifest, std::string{kManifestEntry} + " not found"};

    const ZipEntry* signature{nullptr};
    for (const auto& e : archive.entries()) {
        if (!is_signature_block(e.name)) continue;
        if (signature != nullptr) {
            throw ApkError{ApkErrc::missing_signature, "more than one signature block: " + signature->name + ", " + e.name};
        }
        signature = &e;
    }
    if (signature == nullptr) throw ApkError{ApkErrc::missing_signature, "no META-INF/*.RSA|DSA|EC entry"};

    ApkSummary summary;
    read_manifest(*manifest, summary);
    summary.cert_serial = der::first_certificate_serial(signature->data);
    return summary;
}

}  // namespace appgate::apk
