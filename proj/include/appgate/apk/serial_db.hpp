// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <appgate/apk/apk.hpp>
#include <appgate/registry/app_record.hpp>

namespace appgate::apk {

using registry::RepackVerdict;

//! packageName -> official signing serials. File form: "package<TAB>0xserial" per line.
class SerialDb {
  public:
    //! Returns false when the pair was already present.
    bool add(const std::string& package, const SerialNumber& serial);
    void merge(const SerialDb& other);

    [[nodiscard]] bool contains(const std::string& package) const;
    [[nodiscard]] const std::set<SerialNumber>* serials(const std::string& package) const;
    [[nodiscard]] std::size_t packages() const noexcept { return db_.size(); }
    [[nodiscard]] std::size_t size() const noexcept;
    [[nodiscard]] const std::map<std::string, std::set<SerialNumber>>& entries() const noexcept { return db_; }

    //! A missing file is an empty db.
    static SerialDb load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;
    static void append_line(const std::filesystem::path& path, const std::string& package, const SerialNumber& serial);

    bool operator==(const SerialDb&) const = default;

  private:
    std::map<std::string, std::set<SerialNumber>> db_;
};

struct RepackOutcome {
    RepackVerdict verdict{RepackVerdict::unchecked};
    std::string detail;
};

RepackOutcome repack_check(const ApkSummary& summary, const SerialDb& db);

class SerialDbBuildError : public ApkError {
  public:
    SerialDbBuildError(std::size_t index, const ApkError& cause);
    [[nodiscard]] std::size_t index() const noexcept { return index_; }

  private:
    std::size_t index_;
};

SerialDb build_serial_db(const std::vector<Bytes>& official_apks);

}  // namespace appgate::apk
