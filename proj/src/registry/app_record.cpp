// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/codec.hpp>
#include <appgate/registry/app_record.hpp>

namespace appgate::registry {

std::string_view to_string(RepackVerdict v) noexcept {
    switch (v) {
        case RepackVerdict::pass: return "pass";
        case RepackVerdict::fail: return "fail";
        case RepackVerdict::unchecked: return "unchecked";
    }
    return "unknown";
}

std::optional<RepackVerdict> parse_repack_verdict(std::string_view s) noexcept {
    if (s == "pass") return RepackVerdict::pass;
    if (s == "fail") return RepackVerdict::fail;
    if (s == "unchecked") return RepackVerdict::unchecked;
    return std::nullopt;
}

std::optional<std::string> validate(const AppRecord& r) {
    if (r.package_name.empty()) return "empty package name";
    if (r.version.empty()) return "empty version";
    for (const auto* field : {&r.package_name, &r.version, &r.origin_url}) {
        if (field->size() > 0xffff) return "field longer than 65535 bytes";
    }
    if (r.cert_serial.bytes().size() > 0xffff) return "certificate serial longer than 65535 bytes";
    if (static_cast<std::uint8_t>(r.repack_verdict) > 2) return "unknown repackaging verdict";
    return std::nullopt;
}

Bytes encode(const AppRecord& r) {
    try {
        ByteWriter w;
        w.prefixed16(r.package_name);
        w.prefixed16(r.version);
        w.prefixed16(r.cert_serial.bytes());
        w.prefixed16(r.origin_url);
        w.u8(static_cast<std::uint8_t>(r.repack_verdict));
        w.prefixed16(r.content_id.raw());
        return std::move(w).take();
    } catch (const std::length_error& e) {
        throw MalformedRecord{e.what()};
    }
}

AppRecord decode(ByteView raw) {
    AppRecord r;
    try {
        ByteReader in{raw};
        r.package_name = in.string16();
        r.version = in.string16();
        const auto serial{in.prefixed16()};
        if (!serial.empty() && serial[0] == 0) throw MalformedRecord{"certificate serial is not minimal"};
        r.cert_serial = SerialNumber::from_bytes(serial);
        r.origin_url = in.string16();
        const auto verdict{in.u8()};
        if (verdict > 2) throw MalformedRecord{"unknown repackaging verdict"};
        r.repack_verdict = static_cast<RepackVerdict>(verdict);
        const auto cid{castore::ContentId::from_raw(in.prefixed16())};
        if (!cid) throw MalformedRecord{"malformed content id"};
        r.content_id = *cid;
        if (!in.done()) throw MalformedRecord{"trailing bytes after record"};
    } catch (const DecodeError& e) {
        throw MalformedRecord{e.what()};
    }
    if (auto why{validate(r)}) throw MalformedRecord{*why};
    return r;
}

ledger::Hash32 app_stored_topic() noexcept { return keccak256(kAppStoredEvent); }

ledger::Hash32 identity_topic(std::string_view package_name, std::string_view version) {
    Bytes key{to_bytes(package_name)};
    key.push_back(0x00);
    key.insert(key.end(), version.begin(), version.end());
    return keccak256(key);
}

}  // namespace appgate::registry
