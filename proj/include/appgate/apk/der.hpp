// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include <appgate/apk/errors.hpp>
#include <appgate/bytes.hpp>
#include <appgate/serial_number.hpp>

namespace appgate::apk::der {

inline constexpr std::uint8_t kInteger{0x02};
inline constexpr std::uint8_t kOid{0x06};
inline constexpr std::uint8_t kSequence{0x30};
inline constexpr std::uint8_t kSet{0x31};
inline constexpr std::uint8_t kContext0{0xa0};

struct Tlv {
    std::uint8_t tag{0};
    ByteView value;
};

//! Definite-length DER only. Indefinite lengths, high tag numbers and
//! overruns throw ApkErrc::malformed_der.
class Reader {
  public:
    explicit Reader(ByteView data) : data_{data} {}

    [[nodiscard]] bool done() const noexcept { return pos_ >= data_.size(); }
    [[nodiscard]] std::uint8_t peek_tag() const;
    Tlv next();
    Tlv expect(std::uint8_t tag);

  private:
    ByteView data_;
    std::size_t pos_{0};
};

//! ContentInfo(signedData) -> certificates[0] -> first Certificate -> tbs.serialNumber.
SerialNumber first_certificate_serial(ByteView pkcs7);

}  // namespace appgate::apk::der
