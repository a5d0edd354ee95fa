// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/crypto.hpp>

#include <memory>
#include <stdexcept>

#include <openssl/evp.h>

namespace appgate {

namespace {

template <std::size_t N>
std::array<std::uint8_t, N> evp_digest(const EVP_MD* md, ByteView data) {
    std::array<std::uint8_t, N> out{};
    unsigned int len{0};
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, md, nullptr) != 1 || len != N) {
        throw std::runtime_error{"EVP_Digest failed"};
    }
    return out;
}

}  // namespace

Hash256 sha256(ByteView data) { return evp_digest<32>(EVP_sha256(), data); }

Md5Digest md5(ByteView data) { return evp_digest<16>(EVP_md5(), data); }

}  // namespace appgate
