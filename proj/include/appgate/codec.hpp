// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <appgate/bytes.hpp>

namespace appgate {

class DecodeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

//! Big-endian writer used by every on-disk and on-chain encoding in the project.
class ByteWriter {
  public:
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u16(std::uint16_t v);
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void raw(ByteView b) { out_.insert(out_.end(), b.begin(), b.end()); }
    void raw(std::string_view s) { raw(as_view(s)); }

    //! u16 length prefix; throws std::length_error above 65535 bytes.
    void prefixed16(ByteView b);
    void prefixed16(std::string_view s) { prefixed16(as_view(s)); }
    void prefixed32(ByteView b);

    [[nodiscard]] const Bytes& bytes() const& noexcept { return out_; }
    [[nodiscard]] Bytes take() && noexcept { return std::move(out_); }

  private:
    Bytes out_;
};

class ByteReader {
  public:
    explicit ByteReader(ByteView in) noexcept : in_{in} {}

    std::uint8_t u8();
    std::uint16_t u16();
    std::uint32_t u32();
    std::uint64_t u64();
    ByteView raw(std::size_t n);
    ByteView prefixed16() { return raw(u16()); }
    ByteView prefixed32() { return raw(u32()); }
    std::string string16();

    [[nodiscard]] std::size_t remaining() const noexcept { return in_.size() - pos_; }
    [[nodiscard]] bool done() const noexcept { return pos_ == in_.size(); }

  private:
    ByteView in_;
    std::size_t pos_{0};
};

}  // namespace appgate
