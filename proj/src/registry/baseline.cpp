// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/codec.hpp>
#include <appgate/registry/baseline.hpp>

#include <algorithm>

namespace appgate::registry {

namespace {

ledger::Hash32 length_slot() noexcept { return keccak256(std::string_view{"records.length"}); }

ledger::Hash32 record_slot(std::uint64_t index, std::uint64_t word) {
    ByteWriter w;
    w.raw(std::string_view{"records"});
    w.u64(index);
    auto slot{keccak256(w.bytes())};
    // slot + word as a 256-bit big-endian integer
    for (int i{31}; i >= 0 && word != 0; --i) {
        const std::uint64_t sum{slot[static_cast<std::size_t>(i)] + (word & 0xff)};
        slot[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(sum);
        word = (word >> 8) + (sum >> 8);
    }
    return slot;
}

std::uint64_t word_to_u64(const ledger::Hash32& w) {
    std::uint64_t v{0};
    for (std::size_t i{24}; i < 32; ++i) v = (v << 8) | w[i];
    return v;
}

ledger::Hash32 u64_to_word(std::uint64_t v) {
    ledger::Hash32 w{};
    for (int i{31}; i >= 24; --i, v >>= 8) w[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
    return w;
}

//! Reads a stored record's (package, version) key word by word.
std::pair<std::string, std::string> read_key(const ledger::CallContext& ctx, std::uint64_t index) {
    Bytes buf;
    std::uint64_t next_word{0};
    const auto need{[&](std::size_t n) {
        while (buf.size() < n) {
            const auto w{ctx.sload(record_slot(index, next_word++))};
            buf.insert(buf.end(), w.begin(), w.end());
        }
    }};
    need(2);
    const std::size_t pkg_len{static_cast<std::size_t>((buf[0] << 8) | buf[1])};
    need(2 + pkg_len + 2);
    const std::size_t ver_len{static_cast<std::size_t>((buf[2 + pkg_len] << 8) | buf[3 + pkg_len])};
    need(4 + pkg_len + ver_len);
    return {std::string{buf.begin() + 2, buf.begin() + 2 + static_cast<std::ptrdiff_t>(pkg_len)},
            std::string{buf.begin() + 4 + static_cast<std::ptrdiff_t>(pkg_len),
                        buf.begin() + 4 + static_cast<std::ptrdiff_t>(pkg_len + ver_len)}};
}

}  // namespace

void StructRegistry::execute(ledger::CallContext& ctx) {
    const auto data{ctx.calldata()};
    const auto is{[&](std::string_view sig) {
        const auto sel{selector_of(sig)};
        return data.size() >= 4 && std::equal(sel.begin(), sel.end(), data.begin());
    }};
    const auto fail{[&](RegistryErrc code, std::string_view detail = {}) {
        std::string reason{to_string(code)};
        if (!detail.empty()) reason.append(": ").append(detail);
        ctx.revert(std::move(reason));
    }};

    if (is(calldata::kWhitelistAdd)) return whitelist_update(ctx, owner_, true);
    if (is(calldata::kWhitelistRemove)) return whitelist_update(ctx, owner_, false);
    if (!is(calldata::kStoreAppBaseline)) fail(RegistryErrc::unknown_selector);

    if (ctx.value() != 0) fail(RegistryErrc::non_payable);
    if (!whitelist_contains(ctx, ctx.caller())) fail(RegistryErrc::not_whitelisted);
    store(ctx, data.subspan(4));
}

void StructRegistry::store(ledger::CallContext& ctx, ByteView encoded) {
    AppRecord r;
    try {
        r = decode(encoded);
    } catch (const MalformedRecord& e) {
        ctx.revert(std::string{to_string(RegistryErrc::malformed_record)} + ": " + e.what());
    }

    const std::uint64_t count{word_to_u64(ctx.sload(length_slot()))};
    for (std::uint64_t i{0}; i < count; ++i) {
        const auto [pkg, ver]{read_key(ctx, i)};
        if (pkg == r.package_name && ver == r.version) {
            ctx.revert(std::string{to_string(RegistryErrc::duplicate_record)} + ": " + pkg + " " + ver);
        }
    }

    for (std::uint64_t word{0}; word * 32 < encoded.size(); ++word) {
        ledger::Hash32 w{};
        const auto chunk{encoded.subspan(word * 32, std::min<std::size_t>(32, encoded.size() - word * 32))};
        std::copy(chunk.begin(), chunk.end(), w.begin());
        ctx.sstore(record_slot(count, word), w);
    }
    ctx.sstore(length_slot(), u64_to_word(count + 1));
}

std::uint64_t StructRegistry::words_written(const AppRecord& r) { return (encode(r).size() + 31) / 32 + 1; }

}  // namespace appgate::registry
