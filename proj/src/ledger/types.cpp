// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/codec.hpp>
#include <appgate/ledger/types.hpp>

#include <algorithm>

namespace appgate::ledger {

namespace {

void write_address(ByteWriter& w, const Address& a) { w.raw(a.view()); }

Address read_address(ByteReader& r) {
    Address a;
    const auto raw{r.raw(20)};
    std::copy(raw.begin(), raw.end(), a.bytes.begin());
    return a;
}

Hash32 read_hash(ByteReader& r) {
    Hash32 h;
    const auto raw{r.raw(32)};
    std::copy(raw.begin(), raw.end(), h.begin());
    return h;
}

void write_tx(ByteWriter& w, const Transaction& tx) {
    write_address(w, tx.from);
    write_address(w, tx.to);
    w.u64(tx.value);
    w.u64(tx.nonce);
    w.prefixed32(tx.calldata);
}

Transaction read_tx(ByteReader& r) {
    Transaction tx;
    tx.from = read_address(r);
    tx.to = read_address(r);
    tx.value = r.u64();
    tx.nonce = r.u64();
    const auto data{r.prefixed32()};
    tx.calldata.assign(data.begin(), data.end());
    return tx;
}

void write_receipt(ByteWriter& w, const Receipt& rc) {
    w.raw(rc.tx_id);
    w.u8(static_cast<std::uint8_t>(rc.status));
    w.u64(rc.gas_used);
    w.prefixed16(rc.revert_reason);
    w.u32(static_cast<std::uint32_t>(rc.logs.size()));
    for (const auto& log : rc.logs) {
        write_address(w, log.emitter);
        w.u8(static_cast<std::uint8_t>(log.topics.size()));
        for (const auto& t : log.topics) w.raw(t);
        w.prefixed32(log.data);
    }
}

Receipt read_receipt(ByteReader& r) {
    Receipt rc;
    rc.tx_id = read_hash(r);
    const auto status{r.u8()};
    if (status > 1) throw DecodeError{"bad receipt status"};
    rc.status = static_cast<TxStatus>(status);
    rc.gas_used = r.u64();
    rc.revert_reason = r.string16();
    const auto n_logs{r.u32()};
    for (std::uint32_t i{0}; i < n_logs; ++i) {
        LogEntry log;
        log.emitter = read_address(r);
        const auto n_topics{r.u8()};
        if (n_topics > 4) throw DecodeError{"more than four topics"};
        for (std::uint8_t t{0}; t < n_topics; ++t) log.topics.push_back(read_hash(r));
        const auto data{r.prefixed32()};
        log.data.assign(data.begin(), data.end());
        rc.logs.push_back(std::move(log));
    }
    return rc;
}

}  // namespace

Bytes Transaction::encode() const {
    ByteWriter w;
    write_tx(w, *this);
    return std::move(w).take();
}

Hash32 Transaction::id() const { return keccak256(encode()); }

Bloom2048 bloom_of(const std::vector<LogEntry>& logs) noexcept {
    Bloom2048 bloom;
    for (const auto& log : logs) {
        bloom.insert(log.emitter.view());
        for (const auto& t : log.topics) bloom.insert(t);
    }
    return bloom;
}

Bytes Block::encode() const {
    ByteWriter w;
    w.u64(number);
    w.u32(static_cast<std::uint32_t>(transactions.size()));
    for (const auto& tx : transactions) write_tx(w, tx);
    w.u32(static_cast<std::uint32_t>(receipts.size()));
    for (const auto& rc : receipts) write_receipt(w, rc);
    w.raw(log_bloom.bytes());
    w.u32(static_cast<std::uint32_t>(storage_writes.size()));
    for (const auto& sw : storage_writes) {
        write_address(w, sw.account);
        w.raw(sw.key);
        w.raw(sw.value);
    }
    w.u64(fee_charged);
    return std::move(w).take();
}

Block Block::decode(ByteView raw) {
    ByteReader r{raw};
    Block b;
    b.number = r.u64();
    const auto n_tx{r.u32()};
    for (std::uint32_t i{0}; i < n_tx; ++i) b.transactions.push_back(read_tx(r));
    const auto n_rc{r.u32()};
    for (std::uint32_t i{0}; i < n_rc; ++i) b.receipts.push_back(read_receipt(r));
    b.log_bloom = Bloom2048::from_bytes(r.raw(Bloom2048::kBytes));
    const auto n_sw{r.u32()};
    for (std::uint32_t i{0}; i < n_sw; ++i) {
        StorageWrite sw;
        sw.account = read_address(r);
        sw.key = read_hash(r);
        sw.value = read_hash(r);
        b.storage_writes.push_back(sw);
    }
    b.fee_charged = r.u64();
    if (!r.done()) throw DecodeError{"trailing bytes after block"};
    return b;
}

}  // namespace appgate::ledger
