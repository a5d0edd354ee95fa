// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/codec.hpp>
#include <appgate/ledger/chain_file.hpp>
#include <appgate/ledger/ledger.hpp>

#include <iterator>

namespace appgate::ledger {

ChainFile::ChainFile(std::filesystem::path path) : path_{std::move(path)} {}

std::vector<Block> ChainFile::read_all() {
    std::vector<Block> blocks;
    std::ifstream in{path_, std::ios::binary};
    if (!in) return blocks;
    const Bytes data{std::istreambuf_iterator<char>{in}, std::istreambuf_iterator<char>{}};
    in.close();

    std::size_t pos{0};
    while (pos < data.size()) {
        if (data.size() - pos < 4) break;
        ByteReader header{ByteView{data}.subspan(pos, 4)};
        const std::size_t len{header.u32()};
        if (data.size() - pos - 4 < len) break;
        try {
            blocks.push_back(Block::decode(ByteView{data}.subspan(pos + 4, len)));
        } catch (const DecodeError& e) {
            throw LedgerError{LedgerErrc::corrupt_chain,
                              "chain file record at offset " + std::to_string(pos) + ": " + e.what()};
        }
        pos += 4 + len;
    }
    if (pos != data.size()) std::filesystem::resize_file(path_, pos);
    return blocks;
}

void ChainFile::append(const Block& block) {
    if (!out_.is_open()) {
        out_.open(path_, std::ios::binary | std::ios::app);
        if (!out_) throw std::runtime_error{"cannot open chain file " + path_.string()};
    }
    const Bytes body{block.encode()};
    ByteWriter w;
    w.prefixed32(body);
    const auto& rec{w.bytes()};
    out_.write(reinterpret_cast<const char*>(rec.data()), static_cast<std::streamsize>(rec.size()));
    out_.flush();
    if (!out_) throw std::runtime_error{"write to chain file failed"};
}

}  // namespace appgate::ledger
