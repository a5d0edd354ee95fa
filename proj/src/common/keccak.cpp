// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/crypto.hpp>

#include <bit>
#include <cstring>

namespace appgate {

namespace {

constexpr std::uint64_t kRoundConstants[24] = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL, 0x8000000080008000ULL,
    0x000000000000808bULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
    0x000000000000008aULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
    0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800aULL, 0x800000008000000aULL,
    0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

// rho offsets and pi lane order, walking the (x, y) -> (y, 2x + 3y) cycle from lane 1
constexpr int kRho[24] = {1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 2, 14,
                          27, 41, 56, 8, 25, 43, 62, 18, 39, 61, 20, 44};
constexpr int kPi[24] = {10, 7, 11, 17, 18, 3, 5, 16, 8, 21, 24, 4,
                         15, 23, 19, 13, 12, 2, 20, 14, 22, 9, 6, 1};

void keccak_f1600(std::uint64_t st[25]) noexcept {
    for (const auto rc : kRoundConstants) {
        std::uint64_t c[5];
        for (int x{0}; x < 5; ++x) c[x] = st[x] ^ st[x + 5] ^ st[x + 10] ^ st[x + 15] ^ st[x + 20];
        for (int x{0}; x < 5; ++x) {
            const std::uint64_t d{c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1)};
            for (int y{0}; y < 25; y += 5) st[y + x] ^= d;
        }

        std::uint64_t carry{st[1]};
        for (int i{0}; i < 24; ++i) {
            const int j{kPi[i]};
            const std::uint64_t tmp{st[j]};
            st[j] = std::rotl(carry, kRho[i]);
            carry = tmp;
        }

        for (int y{0}; y < 25; y += 5) {
            std::uint64_t row[5];
            for (int x{0}; x < 5; ++x) row[x] = st[y + x];
            for (int x{0}; x < 5; ++x) st[y + x] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5]);
        }

        st[0] ^= rc;
    }
}

std::uint64_t load_le64(const std::uint8_t* p) noexcept {
    std::uint64_t v{0};
    for (int i{7}; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

}  // namespace

Hash256 keccak256(ByteView data) noexcept {
    constexpr std::size_t kRate{136};
    std::uint64_t st[25]{};

    while (data.size() >= kRate) {
        for (std::size_t i{0}; i < kRate / 8; ++i) st[i] ^= load_le64(data.data() + 8 * i);
        keccak_f1600(st);
        data = data.subspan(kRate);
    }

    std::uint8_t last[kRate]{};
    std::memcpy(last, data.data(), data.size());
    last[data.size()] ^= 0x01;
    last[kRate - 1] ^= 0x80;
    for (std::size_t i{0}; i < kRate / 8; ++i) st[i] ^= load_le64(last + 8 * i);
    keccak_f1600(st);

    Hash256 out;
    for (std::size_t i{0}; i < out.size(); ++i) out[i] = static_cast<std::uint8_t>(st[i / 8] >> (8 * (i % 8)));
    return out;
}

}  // namespace appgate
