// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/codec.hpp>
#include <appgate/registry/registry.hpp>

#include <algorithm>

namespace appgate::registry {

namespace {

constexpr std::pair<RegistryErrc, std::string_view> kErrcNames[] = {
    {RegistryErrc::not_whitelisted, "NotWhitelisted"},
    {RegistryErrc::not_owner, "NotOwner"},
    {RegistryErrc::malformed_record, "MalformedRecord"},
    {RegistryErrc::empty_batch, "EmptyBatch"},
    {RegistryErrc::batch_too_large, "BatchTooLarge"},
    {RegistryErrc::zero_value, "ZeroValue"},
    {RegistryErrc::duplicate_record, "DuplicateRecord"},
    {RegistryErrc::non_payable, "NonPayable"},
    {RegistryErrc::unknown_selector, "UnknownSelector"},
};

Bytes with_selector(std::string_view signature) {
    const auto sel{selector_of(signature)};
    return {sel.begin(), sel.end()};
}

bool selector_is(ByteView data, std::string_view signature) {
    const auto sel{selector_of(signature)};
    return data.size() >= 4 && std::equal(sel.begin(), sel.end(), data.begin());
}

[[noreturn]] void revert(ledger::CallContext& ctx, RegistryErrc code, std::string_view detail = {}) {
    std::string reason{to_string(code)};
    if (!detail.empty()) reason.append(": ").append(detail);
    ctx.revert(std::move(reason));
}

}  // namespace

std::string_view to_string(RegistryErrc code) noexcept {
    for (const auto& [c, name] : kErrcNames) {
        if (c == code) return name;
    }
    return "Unknown";
}

std::optional<RegistryErrc> parse_revert_reason(std::string_view reason) noexcept {
    const auto name{reason.substr(0, reason.find(':'))};
    for (const auto& [c, n] : kErrcNames) {
        if (n == name) return c;
    }
    return std::nullopt;
}

RegistryError::RegistryError(RegistryErrc code, const std::string& reason)
    : std::runtime_error{reason}, code_{code} {}

Selector selector_of(std::string_view signature) noexcept {
    const auto h{keccak256(signature)};
    return {h[0], h[1], h[2], h[3]};
}

namespace calldata {

Bytes store_app(const AppRecord& r) {
    auto out{with_selector(kStoreApp)};
    const auto rec{encode(r)};
    out.insert(out.end(), rec.begin(), rec.end());
    return out;
}

Bytes store_app_batch(std::span<const AppRecord> records) {
    if (records.size() > 0xffff) throw std::length_error{"batch too large to encode"};
    ByteWriter w;
    w.raw(with_selector(kStoreAppBatch));
    w.u16(static_cast<std::uint16_t>(records.size()));
    for (const auto& r : records) w.prefixed32(encode(r));
    return std::move(w).take();
}

Bytes store_app_baseline(const AppRecord& r) {
    auto out{with_selector(kStoreAppBaseline)};
    const auto rec{encode(r)};
    out.insert(out.end(), rec.begin(), rec.end());
    return out;
}

Bytes whitelist_add(const ledger::Address& member) {
    auto out{with_selector(kWhitelistAdd)};
    out.insert(out.end(), member.bytes.begin(), member.bytes.end());
    return out;
}

Bytes whitelist_remove(const ledger::Address& member) {
    auto out{with_selector(kWhitelistRemove)};
    out.insert(out.end(), member.bytes.begin(), member.bytes.end());
    return out;
}

Bytes donate_gas_fee() { return with_selector(kDonateGasFee); }

}  // namespace calldata

ledger::Hash32 whitelist_slot(const ledger::Address& member) noexcept {
    Bytes key{to_bytes("whitelist")};
    key.insert(key.end(), member.bytes.begin(), member.bytes.end());
    return keccak256(key);
}

bool whitelist_contains(const ledger::CallContext& ctx, const ledger::Address& member) {
    return ctx.sload(whitelist_slot(member)) != ledger::Hash32{};
}

void whitelist_update(ledger::CallContext& ctx, const ledger::Address& owner, bool add) {
    if (ctx.value() != 0) revert(ctx, RegistryErrc::non_payable);
    if (ctx.caller() != owner) revert(ctx, RegistryErrc::not_owner);
    const auto args{ctx.calldata().subspan(4)};
    if (args.size() != 20) revert(ctx, RegistryErrc::malformed_record, "expected a 20-byte address");
    ledger::Address member;
    std::copy(args.begin(), args.end(), member.bytes.begin());
    ledger::Hash32 flag{};
    if (add) flag.back() = 1;
    ctx.sstore(whitelist_slot(member), flag);
}

void AppRegistry::execute(ledger::CallContext& ctx) {
    const auto data{ctx.calldata()};
    if (selector_is(data, calldata::kDonateGasFee)) {
        if (ctx.value() == 0) revert(ctx, RegistryErrc::zero_value);
        return;  // the ledger credits the value to this contract
    }
    if (selector_is(data, calldata::kStoreApp)) return store_app(ctx, data.subspan(4));
    if (selector_is(data, calldata::kStoreAppBatch)) return store_app_batch(ctx, data.subspan(4));
    if (selector_is(data, calldata::kWhitelistAdd)) return whitelist_update(ctx, owner_, true);
    if (selector_is(data, calldata::kWhitelistRemove)) return whitelist_update(ctx, owner_, false);
    revert(ctx, RegistryErrc::unknown_selector);
}

void AppRegistry::emit_record(ledger::CallContext& ctx, ByteView encoded) {
    AppRecord r;
    try {
        r = decode(encoded);
    } catch (const MalformedRecord& e) {
        revert(ctx, RegistryErrc::malformed_record, e.what());
    }
    ctx.emit_log({app_stored_topic(), identity_topic(r.package_name, r.version)},
                 Bytes{encoded.begin(), encoded.end()});
}

void AppRegistry::store_app(ledger::CallContext& ctx, ByteView args) {
    if (ctx.value() != 0) revert(ctx, RegistryErrc::non_payable);
    if (!whitelist_contains(ctx, ctx.caller())) revert(ctx, RegistryErrc::not_whitelisted);
    emit_record(ctx, args);
}

void AppRegistry::store_app_batch(ledger::CallContext& ctx, ByteView args) {
    if (ctx.value() != 0) revert(ctx, RegistryErrc::non_payable);
    if (!whitelist_contains(ctx, ctx.caller())) revert(ctx, RegistryErrc::not_whitelisted);
    try {
        ByteReader in{args};
        const auto count{in.u16()};
        if (count == 0) revert(ctx, RegistryErrc::empty_batch);
        if (count > kMaxBatch) revert(ctx, RegistryErrc::batch_too_large, std::to_string(count) + " records");
        for (std::uint16_t i{0}; i < count; ++i) emit_record(ctx, in.prefixed32());
        if (!in.done()) revert(ctx, RegistryErrc::malformed_record, "trailing bytes after batch");
    } catch (const DecodeError& e) {
        revert(ctx, RegistryErrc::malformed_record, e.what());
    }
}

bool AppRegistry::is_whitelisted(const ledger::Ledger& chain, const ledger::Address& member) const {
    return chain.storage_at(self_, whitelist_slot(member)) != ledger::Hash32{};
}

std::uint64_t AppRegistry::store_app_estimate(const AppRecord& r, const ledger::GasSchedule& schedule) {
    if (auto why{validate(r)}) throw MalformedRecord{*why};
    return schedule.intrinsic(calldata::store_app(r)) + schedule.log_cost(2, encode(r).size());
}

}  // namespace appgate::registry
