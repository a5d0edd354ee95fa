// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <appgate/castore/content_id.hpp>
#include <appgate/ledger/address.hpp>
#include <appgate/serial_number.hpp>

namespace appgate::registry {

enum class RepackVerdict : std::uint8_t { pass = 0, fail = 1, unchecked = 2 };

std::string_view to_string(RepackVerdict v) noexcept;
std::optional<RepackVerdict> parse_repack_verdict(std::string_view s) noexcept;

//! On-chain app metadata. (package_name, version) is the identity key.
struct AppRecord {
    std::string package_name;
    std::string version;
    SerialNumber cert_serial;
    std::string origin_url;
    RepackVerdict repack_verdict{RepackVerdict::unchecked};
    castore::ContentId content_id;

    bool operator==(const AppRecord&) const = default;
};

class MalformedRecord : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

//! Reason the record cannot be stored, or nullopt when it is well-formed.
std::optional<std::string> validate(const AppRecord& r);

//! Canonical encoding (docs/formats.md):
//!   u16 len | package_name
//!   u16 len | version
//!   u16 len | cert_serial (minimal big-endian magnitude)
//!   u16 len | origin_url
//!   u8        repack_verdict
//!   u16 len | content_id (33 raw bytes)
//! Throws MalformedRecord when a field exceeds 65535 bytes.
Bytes encode(const AppRecord& r);

//! Strict inverse of encode: trailing bytes, bad verdicts, malformed content ids
//! and failed validation all throw MalformedRecord.
AppRecord decode(ByteView raw);

//! Event signature whose keccak256 is topic[0] of every stored-app log.
inline constexpr std::string_view kAppStoredEvent{"AppStored(bytes32,bytes)"};

ledger::Hash32 app_stored_topic() noexcept;

//! topic[1]: keccak256(package_name || 0x00 || version).
ledger::Hash32 identity_topic(std::string_view package_name, std::string_view version);

}  // namespace appgate::registry
