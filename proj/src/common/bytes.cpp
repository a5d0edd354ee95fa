// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/bytes.hpp>
#include <appgate/codec.hpp>

#include <stdexcept>

namespace appgate {

Bytes to_bytes(std::string_view s) { return {s.begin(), s.end()}; }

std::string to_string(ByteView b) { return {b.begin(), b.end()}; }

std::string to_hex(ByteView b) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(b.size() * 2);
    for (const auto byte : b) {
        out.push_back(kDigits[byte >> 4]);
        out.push_back(kDigits[byte & 0x0f]);
    }
    return out;
}

namespace {

int nibble(char c) noexcept {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::optional<Bytes> from_hex(std::string_view hex) {
    if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
    if (hex.size() % 2 != 0) return std::nullopt;
    Bytes out;
    out.reserve(hex.size() / 2);
    for (std::size_t i{0}; i < hex.size(); i += 2) {
        const int hi{nibble(hex[i])};
        const int lo{nibble(hex[i + 1])};
        if (hi < 0 || lo < 0) return std::nullopt;
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

void ByteWriter::u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v >> 8));
    u8(static_cast<std::uint8_t>(v));
}

void ByteWriter::u32(std::uint32_t v) {
    u16(static_cast<std::uint16_t>(v >> 16));
    u16(static_cast<std::uint16_t>(v));
}

void ByteWriter::u64(std::uint64_t v) {
    u32(static_cast<std::uint32_t>(v >> 32));
    u32(static_cast<std::uint32_t>(v));
}

void ByteWriter::prefixed16(ByteView b) {
    if (b.size() > 0xffff) throw std::length_error{"field exceeds 65535 bytes"};
    u16(static_cast<std::uint16_t>(b.size()));
    raw(b);
}

void ByteWriter::prefixed32(ByteView b) {
    if (b.size() > 0xffffffffu) throw std::length_error{"field exceeds 4 GiB"};
    u32(static_cast<std::uint32_t>(b.size()));
    raw(b);
}

ByteView ByteReader::raw(std::size_t n) {
    if (n > remaining()) throw DecodeError{"unexpected end of input"};
    const auto view{in_.subspan(pos_, n)};
    pos_ += n;
    return view;
}

std::uint8_t ByteReader::u8() { return raw(1)[0]; }

std::uint16_t ByteReader::u16() {
    const auto b{raw(2)};
    return static_cast<std::uint16_t>((b[0] << 8) | b[1]);
}

std::uint32_t ByteReader::u32() {
    const std::uint32_t hi{u16()};
    return (hi << 16) | u16();
}

std::uint64_t ByteReader::u64() {
    const std::uint64_t hi{u32()};
    return (hi << 32) | u32();
}

std::string ByteReader::string16() { return to_string(prefixed16()); }

}  // namespace appgate
