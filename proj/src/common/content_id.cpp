// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/castore/content_id.hpp>

#include <algorithm>

namespace appgate::castore {

namespace {
constexpr char kAlphabet[] = "abcdefghijklmnopqrstuvwxyz234567";
}

std::string base32_encode(ByteView data) {
    std::string out;
    out.reserve((data.size() * 8 + 4) / 5);
    std::uint32_t buffer{0};
    int bits{0};
    for (const auto b : data) {
        buffer = (buffer << 8) | b;
        bits += 8;
        while (bits >= 5) {
            out.push_back(kAlphabet[(buffer >> (bits - 5)) & 0x1f]);
            bits -= 5;
        }
    }
    if (bits > 0) out.push_back(kAlphabet[(buffer << (5 - bits)) & 0x1f]);
    return out;
}

std::optional<Bytes> base32_decode(std::string_view text) {
    Bytes out;
    std::uint32_t buffer{0};
    int bits{0};
    for (const char c : text) {
        const char* pos{std::find(kAlphabet, kAlphabet + 32, c)};
        if (pos == kAlphabet + 32) return std::nullopt;
        buffer = (buffer << 5) | static_cast<std::uint32_t>(pos - kAlphabet);
        bits += 5;
        if (bits >= 8) {
            out.push_back(static_cast<std::uint8_t>(buffer >> (bits - 8)));
            bits -= 8;
        }
    }
    // trailing bits must be zero padding shorter than one symbol
    if (bits >= 5 || (buffer & ((1u << bits) - 1)) != 0) return std::nullopt;
    return out;
}

ContentId ContentId::of(ByteView content) { return from_digest(sha256(content)); }

ContentId ContentId::from_digest(const Hash256& digest) noexcept {
    ContentId id;
    id.digest_ = digest;
    return id;
}

std::optional<ContentId> ContentId::from_raw(ByteView raw) {
    if (raw.size() != kRawSize || raw[0] != kVersion) return std::nullopt;
    ContentId id;
    std::copy(raw.begin() + 1, raw.end(), id.digest_.begin());
    return id;
}

std::optional<ContentId> ContentId::parse(std::string_view text) {
    const auto raw{base32_decode(text)};
    if (!raw) return std::nullopt;
    return from_raw(*raw);
}

Bytes ContentId::raw() const {
    Bytes out;
    out.reserve(kRawSize);
    out.push_back(kVersion);
    out.insert(out.end(), digest_.begin(), digest_.end());
    return out;
}

std::string ContentId::str() const { return base32_encode(raw()); }

bool ContentId::certifies(ByteView content) const { return sha256(content) == digest_; }

}  // namespace appgate::castore
