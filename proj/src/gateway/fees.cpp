// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/gateway/fees.hpp>

#include <fstream>

namespace appgate::gateway {

std::string_view to_string(FeeRejection r) noexcept {
    switch (r) {
        case FeeRejection::unknown_tx: return "unknownTx";
        case FeeRejection::wrong_destination: return "wrongDestination";
        case FeeRejection::insufficient_value: return "insufficientValue";
        case FeeRejection::already_used: return "alreadyUsed";
    }
    return "unknownTx";
}

FeeRejected::FeeRejected(FeeRejection reason, const std::string& detail)
    : std::runtime_error{std::string{to_string(reason)} + ": " + detail}, reason_{reason} {}

FeeLedger::FeeLedger(const ledger::Ledger& chain, ledger::Address registry, std::filesystem::path journal)
    : chain_{chain}, registry_{registry}, journal_{std::move(journal)} {
    if (journal_.empty()) return;
    std::ifstream in{journal_};
    for (std::string line; std::getline(in, line);) {
        const auto raw{from_hex(line)};
        if (!raw || raw->size() != 32) continue;
        ledger::Hash32 id{};
        std::copy(raw->begin(), raw->end(), id.begin());
        const auto tx{chain_.lookup(id)};
        if (!tx) continue;
        consumed_[id] = FeeTicket{id, tx->tx.from, tx->tx.value, true};
    }
}

FeeTicket FeeLedger::reserve(const ledger::Hash32& tx_id, ledger::Wei required) {
    const auto found{chain_.lookup(tx_id)};
    const auto id_hex{to_hex(tx_id)};
    if (!found || !found->receipt.ok()) throw FeeRejected{FeeRejection::unknown_tx, id_hex};
    if (found->tx.to != registry_) {
        throw FeeRejected{FeeRejection::wrong_destination, id_hex + " was sent to " + found->tx.to.hex()};
    }
    if (found->tx.value < required) {
        throw FeeRejected{FeeRejection::insufficient_value,
                          std::to_string(found->tx.value) + " < " + std::to_string(required) + " wei"};
    }
    std::lock_guard lock{mu_};
    if (consumed_.contains(tx_id) || reserved_.contains(tx_id)) throw FeeRejected{FeeRejection::already_used, id_hex};
    FeeTicket ticket{tx_id, found->tx.from, found->tx.value, false};
    reserved_.emplace(tx_id, ticket);
    return ticket;
}

void FeeLedger::commit(const ledger::Hash32& tx_id) {
    std::lock_guard lock{mu_};
    const auto it{reserved_.find(tx_id)};
    if (it == reserved_.end()) throw std::logic_error{"commit of an unreserved fee ticket"};
    if (!journal_.empty()) {
        std::ofstream out{journal_, std::ios::app};
        out << to_hex(tx_id) << '\n';
        out.flush();
        if (!out) throw std::runtime_error{"cannot append to " + journal_.string()};
    }
    it->second.consumed = true;
    consumed_.insert(reserved_.extract(it));
}

void FeeLedger::release(const ledger::Hash32& tx_id) {
    std::lock_guard lock{mu_};
    reserved_.erase(tx_id);
}

FeeTicket FeeLedger::verify(const ledger::Hash32& tx_id, ledger::Wei required) {
    auto ticket{reserve(tx_id, required)};
    commit(tx_id);
    ticket.consumed = true;
    return ticket;
}

bool FeeLedger::consumed(const ledger::Hash32& tx_id) const {
    std::lock_guard lock{mu_};
    return consumed_.contains(tx_id);
}

ledger::Wei FeeLedger::consumed_value() const {
    std::lock_guard lock{mu_};
    ledger::Wei sum{0};
    for (const auto& [id, t] : consumed_) sum += t.value;
    return sum;
}

std::size_t FeeLedger::consumed_count() const {
    std::lock_guard lock{mu_};
    return consumed_.size();
}

}  // namespace appgate::gateway
