// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <fstream>
#include <vector>

#include <appgate/ledger/types.hpp>

namespace appgate::ledger {

//! Append-only block log: each record is a big-endian u32 byte length followed
//! by Block::encode(). See docs/formats.md.
class ChainFile {
  public:
    explicit ChainFile(std::filesystem::path path);

    //! Every complete record in the file. A torn final record (crash during
    //! append) is dropped and truncated away; any other damage throws.
    std::vector<Block> read_all();
    void append(const Block& block);

    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

  private:
    std::filesystem::path path_;
    std::ofstream out_;
};

}  // namespace appgate::ledger
