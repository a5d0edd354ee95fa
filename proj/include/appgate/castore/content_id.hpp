// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <string>

#include <appgate/crypto.hpp>

namespace appgate::castore {

//! Self-certifying identifier: a version byte followed by SHA-256 of the content.
//! Rendered as unpadded lowercase RFC 4648 base32 of the 33 raw bytes.
class ContentId {
  public:
    static constexpr std::uint8_t kVersion{0x01};
    static constexpr std::size_t kRawSize{33};

    ContentId() = default;

    static ContentId of(ByteView content);
    static ContentId from_digest(const Hash256& digest) noexcept;
    static std::optional<ContentId> from_raw(ByteView raw);
    static std::optional<ContentId> parse(std::string_view text);

    [[nodiscard]] const Hash256& digest() const noexcept { return digest_; }
    [[nodiscard]] Bytes raw() const;
    [[nodiscard]] std::string str() const;

    //! True when sha256(content) reproduces this id.
    [[nodiscard]] bool certifies(ByteView content) const;

    auto operator<=>(const ContentId&) const = default;

  private:
    Hash256 digest_{};
};

std::string base32_encode(ByteView data);
std::optional<Bytes> base32_decode(std::string_view text);

}  // namespace appgate::castore

template <>
struct std::hash<appgate::castore::ContentId> {
    std::size_t operator()(const appgate::castore::ContentId& id) const noexcept {
        std::size_t h{0};
        for (std::size_t i{0}; i < sizeof(std::size_t); ++i) h = (h << 8) | id.digest()[i];
        return h;
    }
};
