// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/serial_number.hpp>

#include <algorithm>

namespace appgate {

SerialNumber SerialNumber::from_bytes(ByteView big_endian) {
    const auto first{std::find_if(big_endian.begin(), big_endian.end(), [](auto b) { return b != 0; })};
    SerialNumber s;
    s.magnitude_.assign(first, big_endian.end());
    return s;
}

SerialNumber SerialNumber::from_uint(std::uint64_t v) {
    Bytes be(8);
    for (int i{7}; i >= 0; --i, v >>= 8) be[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
    return from_bytes(be);
}

std::optional<SerialNumber> SerialNumber::from_hex(std::string_view hex) {
    if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
    if (hex.empty()) return std::nullopt;
    std::string padded{hex};
    if (padded.size() % 2 != 0) padded.insert(padded.begin(), '0');
    const auto raw{appgate::from_hex(padded)};
    if (!raw) return std::nullopt;
    return from_bytes(*raw);
}

std::string SerialNumber::hex() const {
    if (magnitude_.empty()) return "0x0";
    std::string digits{to_hex(magnitude_)};
    if (digits.front() == '0') digits.erase(0, 1);
    return "0x" + digits;
}

}  // namespace appgate
