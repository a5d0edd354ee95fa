// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/apk/der.hpp>

#include <algorithm>
#include <array>

namespace appgate::apk::der {
namespace {

[[noreturn]] void bad(const std::string& what) { throw ApkError{ApkErrc::malformed_der, what}; }

// 1.2.840.113549.1.7.2
constexpr std::array<std::uint8_t, 9> kSignedDataOid{0x2a, 0x86, 0x48, 0x86, 0xf7, 0x0d, 0x01, 0x07, 0x02};

}  // namespace

std::uint8_t Reader::peek_tag() const {
    if (done()) bad("unexpected end of data");
    return data_[pos_];
}

Tlv Reader::next() {
    if (data_.size() - pos_ < 2) bad("truncated header");
    const std::uint8_t tag{data_[pos_]};
    if ((tag & 0x1f) == 0x1f) bad("high tag numbers are not supported");
    const std::uint8_t first{data_[pos_ + 1]};
    std::size_t at{pos_ + 2};
    std::size_t len{first};
    if (first == 0x80) bad("indefinite length");
    if (first & 0x80) {
        const std::size_t n{first & 0x7fu};
        if (n > 4) bad("length field too wide");
        if (data_.size() - at < n) bad("truncated length");
        len = 0;
        for (std::size_t i{0}; i < n; ++i) len = (len << 8) | data_[at + i];
        if (data_[at] == 0 || len < 0x80) bad("non-minimal length");
        at += n;
    }
    if (data_.size() - at < len) bad("value overruns its container");
    pos_ = at + len;
    return {tag, data_.subspan(at, len)};
}

Tlv Reader::expect(std::uint8_t tag) {
    const auto tlv{next()};
    if (tlv.tag != tag) bad("unexpected tag " + std::to_string(tlv.tag) + ", wanted " + std::to_string(tag));
    return tlv;
}

SerialNumber first_certificate_serial(ByteView pkcs7) {
    Reader outer{pkcs7};
    Reader content_info{outer.expect(kSequence).value};
    const auto oid{content_info.expect(kOid).value};
    if (!std::equal(oid.begin(), oid.end(), kSignedDataOid.begin(), kSignedDataOid.end())) {
        bad("content type is not signedData");
    }
    Reader explicit0{content_info.expect(kContext0).value};
    Reader signed_data{explicit0.expect(kSequence).value};
    signed_data.expect(kInteger);
    signed_data.expect(kSet);
    signed_data.expect(kSequence);
    if (signed_data.done() || signed_data.peek_tag() != kContext0) bad("signedData carries no certificates");
    Reader certificates{signed_data.next().value};
    Reader certificate{certificates.expect(kSequence).value};
    Reader tbs{certificate.expect(kSequence).value};
    if (tbs.peek_tag() == kContext0) tbs.next();
    const auto serial{tbs.expect(kInteger).value};
    if (serial.empty()) bad("empty serialNumber");
    if (serial[0] & 0x80) bad("negative serialNumber");
    return SerialNumber::from_bytes(serial);
}

}  // namespace appgate::apk::der
