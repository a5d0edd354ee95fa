// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/ledger/chain_file.hpp>
#include <appgate/ledger/ledger.hpp>

#include <algorithm>

namespace appgate::ledger {

std::string_view to_string(LedgerErrc code) noexcept {
    switch (code) {
        case LedgerErrc::bad_nonce: return "BadNonce";
        case LedgerErrc::insufficient_balance: return "InsufficientBalance";
        case LedgerErrc::range_out_of_bounds: return "RangeOutOfBounds";
        case LedgerErrc::bad_log: return "BadLog";
        case LedgerErrc::corrupt_chain: return "CorruptChain";
    }
    return "Unknown";
}

LedgerError::LedgerError(LedgerErrc code, const std::string& what)
    : std::runtime_error{std::string{to_string(code)} + ": " + what}, code_{code} {}

Hash32 CallContext::sload(const Hash32& key) const {
    if (const auto it{writes_.find(key)}; it != writes_.end()) return it->second;
    return ledger_.storage_unlocked(self(), key);
}

void CallContext::sstore(const Hash32& key, const Hash32& value) {
    gas_ += schedule_.sstore_set;
    writes_[key] = value;
}

void CallContext::emit_log(std::vector<Hash32> topics, Bytes data) {
    if (topics.size() > 4) throw LedgerError{LedgerErrc::bad_log, "a log carries at most four topics"};
    gas_ += schedule_.log_cost(topics.size(), data.size());
    logs_.push_back(LogEntry{self(), std::move(topics), std::move(data)});
}

void CallContext::revert(std::string reason) { throw Revert{std::move(reason)}; }

Ledger::Ledger(Genesis genesis) : schedule_{genesis.schedule}, gas_price_{genesis.gas_price} {
    if (!schedule_.valid()) throw std::invalid_argument{"gas schedule entries must be positive"};
    for (const auto& [addr, wei] : genesis.balances) balances_[addr] += wei;
    blocks_.push_back(Block{});
}

Ledger::Ledger(Genesis genesis, const std::filesystem::path& chain_file) : Ledger{std::move(genesis)} {
    file_ = std::make_unique<ChainFile>(chain_file);
    for (auto& block : file_->read_all()) {
        if (block.number != blocks_.size()) {
            throw LedgerError{LedgerErrc::corrupt_chain, "block numbers are not contiguous"};
        }
        apply(block);
        blocks_.push_back(std::move(block));
    }
}

Ledger::~Ledger() = default;

Receipt Ledger::submit(const Transaction& tx, ContractExecutor& executor) {
    std::lock_guard writer{writer_mu_};
    return submit_locked(tx, executor);
}

Receipt Ledger::submit_next(Address from, Address to, Wei value, Bytes calldata, ContractExecutor& executor) {
    std::lock_guard writer{writer_mu_};
    Transaction tx{from, to, value, std::move(calldata), nonce(from)};
    return submit_locked(tx, executor);
}

Receipt Ledger::submit_locked(const Transaction& tx, ContractExecutor& executor) {
    // Only this (serialized) writer mutates state, so unlocked reads are safe here.
    const auto nonce_it{nonces_.find(tx.from)};
    const std::uint64_t expected{nonce_it == nonces_.end() ? 0 : nonce_it->second};
    if (tx.nonce != expected) {
        throw LedgerError{LedgerErrc::bad_nonce,
                          "expected " + std::to_string(expected) + ", got " + std::to_string(tx.nonce)};
    }

    const auto bal_it{balances_.find(tx.from)};
    const Wei balance{bal_it == balances_.end() ? 0 : bal_it->second};
    const std::uint64_t intrinsic{schedule_.intrinsic(tx.calldata)};
    if (balance < tx.value || (balance - tx.value) / gas_price_ < intrinsic) {
        throw LedgerError{LedgerErrc::insufficient_balance, tx.from.hex()};
    }

    CallContext ctx{*this, tx, schedule_};
    Receipt receipt;
    receipt.tx_id = tx.id();
    try {
        executor.execute(ctx);
    } catch (const Revert& r) {
        receipt.status = TxStatus::revert;
        receipt.revert_reason = r.what();
    }
    receipt.gas_used = intrinsic + ctx.gas_used();

    Block block;
    block.number = blocks_.size();
    block.transactions.push_back(tx);
    if (receipt.ok()) {
        const Wei fee{receipt.gas_used * gas_price_};
        if (balance - tx.value < fee) {
            throw LedgerError{LedgerErrc::insufficient_balance, tx.from.hex()};
        }
        block.fee_charged = fee;
        receipt.logs = std::move(ctx.logs_);
        for (const auto& [key, value] : ctx.writes_) block.storage_writes.push_back({tx.to, key, value});
    }
    block.log_bloom = bloom_of(receipt.logs);
    block.receipts.push_back(receipt);

    if (file_) file_->append(block);

    std::unique_lock lock{state_mu_};
    apply(block);
    blocks_.push_back(std::move(block));
    return receipt;
}

void Ledger::apply(const Block& block) {
    for (std::size_t i{0}; i < block.transactions.size(); ++i) {
        const auto& tx{block.transactions[i]};
        ++nonces_[tx.from];
        if (i < block.receipts.size() && block.receipts[i].ok()) {
            balances_[tx.from] -= tx.value + block.fee_charged;
            balances_[tx.to] += tx.value;
        }
        if (i < block.receipts.size()) tx_index_[block.receipts[i].tx_id] = block.number;
    }
    for (const auto& sw : block.storage_writes) {
        const auto key{std::make_pair(sw.account, sw.key)};
        if (sw.value == Hash32{}) {
            storage_.erase(key);
        } else {
            storage_[key] = sw.value;
        }
    }
}

std::vector<LogMatch> Ledger::find_logs(std::uint64_t from_block, std::uint64_t to_block, const Hash32& topic,
                                        LogQueryStats* stats) const {
    std::shared_lock lock{state_mu_};
    if (from_block > to_block || to_block >= blocks_.size()) {
        throw LedgerError{LedgerErrc::range_out_of_bounds,
                          "[" + std::to_string(from_block) + ", " + std::to_string(to_block) + "] vs head " +
                              std::to_string(blocks_.size() - 1)};
    }
    LogQueryStats local;
    std::vector<LogMatch> out;
    for (auto n{from_block}; n <= to_block; ++n) {
        ++local.blocks_in_range;
        const auto& block{blocks_[n]};
        if (!block.log_bloom.query(topic)) continue;
        ++local.bloom_matched;
        ++local.receipts_scanned;
        for (const auto& rc : block.receipts) {
            for (const auto& log : rc.logs) {
                if (std::find(log.topics.begin(), log.topics.end(), topic) != log.topics.end()) {
                    out.push_back(LogMatch{n, rc.tx_id, log});
                }
            }
        }
    }
    if (stats) *stats = local;
    return out;
}

std::uint64_t Ledger::head() const {
    std::shared_lock lock{state_mu_};
    return blocks_.size() - 1;
}

std::optional<Block> Ledger::block(std::uint64_t number) const {
    std::shared_lock lock{state_mu_};
    if (number >= blocks_.size()) return std::nullopt;
    return blocks_[number];
}

std::optional<TxLookup> Ledger::lookup(const Hash32& tx_id) const {
    std::shared_lock lock{state_mu_};
    const auto it{tx_index_.find(tx_id)};
    if (it == tx_index_.end()) return std::nullopt;
    const auto& block{blocks_[it->second]};
    for (std::size_t i{0}; i < block.receipts.size(); ++i) {
        if (block.receipts[i].tx_id == tx_id) return TxLookup{block.transactions[i], block.receipts[i], block.number};
    }
    return std::nullopt;
}

Wei Ledger::balance(const Address& a) const {
    std::shared_lock lock{state_mu_};
    const auto it{balances_.find(a)};
    return it == balances_.end() ? 0 : it->second;
}

std::uint64_t Ledger::nonce(const Address& a) const {
    std::shared_lock lock{state_mu_};
    const auto it{nonces_.find(a)};
    return it == nonces_.end() ? 0 : it->second;
}

Hash32 Ledger::storage_at(const Address& account, const Hash32& key) const {
    std::shared_lock lock{state_mu_};
    return storage_unlocked(account, key);
}

Hash32 Ledger::storage_unlocked(const Address& account, const Hash32& key) const {
    const auto it{storage_.find({account, key})};
    return it == storage_.end() ? Hash32{} : it->second;
}

StateSnapshot Ledger::snapshot() const {
    std::shared_lock lock{state_mu_};
    StateSnapshot s;
    for (const auto& [a, w] : balances_) s.balances[a] = w;
    for (const auto& [a, n] : nonces_) s.nonces[a] = n;
    s.storage = storage_;
    return s;
}

}  // namespace appgate::ledger
