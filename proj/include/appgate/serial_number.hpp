// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <optional>
#include <string>

#include <appgate/bytes.hpp>

namespace appgate {

//! Non-negative big integer as carried by an X.509 serialNumber.
//! Stored as minimal big-endian magnitude; zero is the empty byte string.
class SerialNumber {
  public:
    SerialNumber() = default;

    //! Leading zero bytes are stripped.
    static SerialNumber from_bytes(ByteView big_endian);
    static SerialNumber from_uint(std::uint64_t v);
    //! "0x706a633e", "706A633E" and "0x0" are accepted; odd digit counts are fine.
    static std::optional<SerialNumber> from_hex(std::string_view hex);

    [[nodiscard]] const Bytes& bytes() const noexcept { return magnitude_; }
    //! "0x"-prefixed lowercase, no leading zeros ("0x0" for zero).
    [[nodiscard]] std::string hex() const;

    auto operator<=>(const SerialNumber&) const = default;

  private:
    Bytes magnitude_;
};

}  // namespace appgate
