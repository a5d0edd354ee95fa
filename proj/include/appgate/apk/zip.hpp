// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include <appgate/apk/errors.hpp>
#include <appgate/bytes.hpp>

namespace appgate::apk {

struct ZipEntry {
    std::string name;
    Bytes data;
};

//! Reads stored and deflated entries through the central directory.
//! Every structural problem (bad offsets, CRC, sizes, Zip64) is ApkErrc::not_a_zip.
class ZipArchive {
  public:
    static ZipArchive parse(ByteView archive);

    [[nodiscard]] const std::vector<ZipEntry>& entries() const noexcept { return entries_; }
    [[nodiscard]] const ZipEntry* find(std::string_view name) const noexcept;

  private:
    std::vector<ZipEntry> entries_;
};

//! Entries are written in the given order with a fixed 1980-01-01 timestamp,
//! so equal inputs give byte-identical archives.
Bytes write_zip(const std::vector<ZipEntry>& entries, bool deflate = true);

inline constexpr std::size_t kMaxEntrySize{64u << 20};

}  // namespace appgate::apk
