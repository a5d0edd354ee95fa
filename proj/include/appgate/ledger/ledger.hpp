// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <appgate/ledger/gas.hpp>
#include <appgate/ledger/types.hpp>

namespace appgate::ledger {

class ChainFile;
class Ledger;

enum class LedgerErrc { bad_nonce, insufficient_balance, range_out_of_bounds, bad_log, corrupt_chain };

std::string_view to_string(LedgerErrc) noexcept;

class LedgerError : public std::runtime_error {
  public:
    LedgerError(LedgerErrc code, const std::string& what);
    [[nodiscard]] LedgerErrc code() const noexcept { return code_; }

  private:
    LedgerErrc code_;
};

//! Execution environment handed to a contract for one call. Storage writes and
//! logs are buffered here and only committed by the ledger when the call
//! returns normally.
class CallContext {
  public:
    [[nodiscard]] const Address& caller() const noexcept { return tx_.from; }
    [[nodiscard]] const Address& self() const noexcept { return tx_.to; }
    [[nodiscard]] Wei value() const noexcept { return tx_.value; }
    [[nodiscard]] ByteView calldata() const noexcept { return tx_.calldata; }
    [[nodiscard]] const GasSchedule& schedule() const noexcept { return schedule_; }

    //! Reads see this call's own pending writes. Unset words read as zero.
    [[nodiscard]] Hash32 sload(const Hash32& key) const;
    //! Charges sstore_set per word.
    void sstore(const Hash32& key, const Hash32& value);
    //! Charges log_base + log_topic per topic + log_data_byte per data byte.
    void emit_log(std::vector<Hash32> topics, Bytes data);
    [[noreturn]] void revert(std::string reason);

    //! Gas charged by the contract so far (excludes the intrinsic cost).
    [[nodiscard]] std::uint64_t gas_used() const noexcept { return gas_; }

  private:
    friend class Ledger;
    CallContext(const Ledger& ledger, const Transaction& tx, const GasSchedule& schedule)
        : ledger_{ledger}, tx_{tx}, schedule_{schedule} {}

    const Ledger& ledger_;
    const Transaction& tx_;
    const GasSchedule& schedule_;
    std::uint64_t gas_{0};
    std::map<Hash32, Hash32> writes_;
    std::vector<LogEntry> logs_;
};

//! Thrown by CallContext::revert and caught by the ledger.
class Revert : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ContractExecutor {
  public:
    virtual ~ContractExecutor() = default;
    virtual void execute(CallContext& ctx) = 0;
};

//! Accepts any call and does nothing (plain value transfer).
class NoOpExecutor final : public ContractExecutor {
  public:
    void execute(CallContext&) override {}
};

struct Genesis {
    std::vector<std::pair<Address, Wei>> balances;
    Wei gas_price{1'000'000'000};  // 1 Gwei
    GasSchedule schedule{};
};

struct LogMatch {
    std::uint64_t block_number{0};
    Hash32 tx_id{};
    LogEntry log;

    bool operator==(const LogMatch&) const = default;
};

struct LogQueryStats {
    std::uint64_t blocks_in_range{0};
    std::uint64_t bloom_matched{0};
    std::uint64_t receipts_scanned{0};
};

struct TxLookup {
    Transaction tx;
    Receipt receipt;
    std::uint64_t block_number{0};
};

//! Full account state, for snapshot diffing in tests and audits.
struct StateSnapshot {
    std::map<Address, Wei> balances;
    std::map<Address, std::uint64_t> nonces;
    std::map<std::pair<Address, Hash32>, Hash32> storage;

    bool operator==(const StateSnapshot&) const = default;
};

//! Account ledger with one transaction per block.
//!
//! Writers are serialized; readers (balances, blocks, find_logs) take a shared
//! lock and only observe fully appended blocks. Block 0 is an empty genesis block.
class Ledger {
  public:
    explicit Ledger(Genesis genesis);
    //! Replays an existing chain file (if any) on top of genesis and appends
    //! every new block to it.
    Ledger(Genesis genesis, const std::filesystem::path& chain_file);
    ~Ledger();

    Ledger(const Ledger&) = delete;
    Ledger& operator=(const Ledger&) = delete;

    //! Executes tx against executor and appends a block with its receipt.
    //! A revert still appends a block (status revert, no logs) and consumes the
    //! nonce, but leaves balances and storage untouched.
    //! Throws LedgerError{bad_nonce | insufficient_balance}; nothing is appended then.
    Receipt submit(const Transaction& tx, ContractExecutor& executor);

    //! As submit, with the nonce assigned atomically from the sender's next nonce.
    Receipt submit_next(Address from, Address to, Wei value, Bytes calldata, ContractExecutor& executor);

    //! Logs whose topics contain topic, in chain order. Blocks whose bloom
    //! rejects the topic are skipped without touching their receipts.
    [[nodiscard]] std::vector<LogMatch> find_logs(std::uint64_t from_block, std::uint64_t to_block,
                                                  const Hash32& topic,
                                                  LogQueryStats* stats = nullptr) const;

    [[nodiscard]] std::uint64_t head() const;
    [[nodiscard]] std::optional<Block> block(std::uint64_t number) const;
    [[nodiscard]] std::optional<TxLookup> lookup(const Hash32& tx_id) const;

    [[nodiscard]] Wei balance(const Address& a) const;
    [[nodiscard]] std::uint64_t nonce(const Address& a) const;
    [[nodiscard]] Hash32 storage_at(const Address& account, const Hash32& key) const;
    [[nodiscard]] StateSnapshot snapshot() const;

    [[nodiscard]] const GasSchedule& schedule() const noexcept { return schedule_; }
    [[nodiscard]] Wei gas_price() const noexcept { return gas_price_; }

  private:
    friend class CallContext;

    Receipt submit_locked(const Transaction& tx, ContractExecutor& executor);
    void apply(const Block& block);
    [[nodiscard]] Hash32 storage_unlocked(const Address& account, const Hash32& key) const;

    GasSchedule schedule_;
    Wei gas_price_;

    mutable std::shared_mutex state_mu_;
    std::mutex writer_mu_;

    std::vector<Block> blocks_;
    std::unordered_map<Address, Wei> balances_;
    std::unordered_map<Address, std::uint64_t> nonces_;
    std::map<std::pair<Address, Hash32>, Hash32> storage_;
    std::map<Hash32, std::uint64_t> tx_index_;

    std::unique_ptr<ChainFile> file_;
};

}  // namespace appgate::ledger
