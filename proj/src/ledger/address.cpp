// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/ledger/address.hpp>

#include <algorithm>

namespace appgate::ledger {

std::optional<Address> Address::from_hex(std::string_view hex) {
    const auto raw{appgate::from_hex(hex)};
    if (!raw || raw->size() != 20) return std::nullopt;
    Address a;
    std::copy(raw->begin(), raw->end(), a.bytes.begin());
    return a;
}

Address Address::derive(std::string_view label) noexcept {
    const auto h{keccak256(label)};
    Address a;
    std::copy(h.begin() + 12, h.end(), a.bytes.begin());
    return a;
}

std::string Address::hex() const { return "0x" + to_hex(view()); }

}  // namespace appgate::ledger
