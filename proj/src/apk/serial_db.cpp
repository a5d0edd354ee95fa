// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/apk/serial_db.hpp>

#include <fstream>
#include <numeric>

namespace appgate::apk {

bool SerialDb::add(const std::string& package, const SerialNumber& serial) {
    if (package.empty() || package.find_first_of("\t\n") != std::string::npos) {
        throw std::invalid_argument{"bad package name for serial db"};
    }
    return db_[package].insert(serial).second;
}

void SerialDb::merge(const SerialDb& other) {
    for (const auto& [pkg, serials] : other.db_) db_[pkg].insert(serials.begin(), serials.end());
}

bool SerialDb::contains(const std::string& package) const { return db_.contains(package); }

const std::set<SerialNumber>* SerialDb::serials(const std::string& package) const {
    const auto it{db_.find(package)};
    return it == db_.end() ? nullptr : &it->second;
}

std::size_t SerialDb::size() const noexcept {
    return std::accumulate(db_.begin(), db_.end(), std::size_t{0},
                           [](std::size_t n, const auto& kv) { return n + kv.second.size(); });
}

SerialDb SerialDb::load(const std::filesystem::path& path) {
    SerialDb db;
    std::ifstream in{path};
    if (!in) return db;
    std::string line;
    std::size_t lineno{0};
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto tab{line.find('\t')};
        const auto serial{tab == std::string::npos ? std::nullopt : SerialNumber::from_hex(line.substr(tab + 1))};
        if (!serial || tab == 0) {
            throw std::runtime_error{path.string() + ":" + std::to_string(lineno) + ": expected package<TAB>hexSerial"};
        }
        db.add(line.substr(0, tab), *serial);
    }
    return db;
}

void SerialDb::save(const std::filesystem::path& path) const {
    const auto tmp{path.string() + ".tmp"};
    {
        std::ofstream out{tmp, std::ios::trunc};
        for (const auto& [pkg, serials] : db_) {
            for (const auto& s : serials) out << pkg << '\t' << s.hex() << '\n';
        }
        if (!out) throw std::runtime_error{"cannot write " + tmp};
    }
    std::filesystem::rename(tmp, path);
}

void SerialDb::append_line(const std::filesystem::path& path, const std::string& package, const SerialNumber& serial) {
    std::ofstream out{path, std::ios::app};
    out << package << '\t' << serial.hex() << '\n';
    out.flush();
    if (!out) throw std::runtime_error{"cannot append to " + path.string()};
}

RepackOutcome repack_check(const ApkSummary& summary, const SerialDb& db) {
    const auto* official{db.serials(summary.package_name)};
    if (official == nullptr) return {RepackVerdict::unchecked, summary.package_name + " has no official serial on record"};
    if (official->contains(summary.cert_serial)) {
        return {RepackVerdict::pass, "serial " + summary.cert_serial.hex() + " is official"};
    }
    std::string known;
    for (const auto& s : *official) known += (known.empty() ? "" : ",") + s.hex();
    return {RepackVerdict::fail, "serial " + summary.cert_serial.hex() + " differs from official " + known};
}

SerialDbBuildError::SerialDbBuildError(std::size_t index, const ApkError& cause)
    : ApkError{cause.code(), "official apk #" + std::to_string(index) + ": " + cause.what()}, index_{index} {}

SerialDb build_serial_db(const std::vector<Bytes>& official_apks) {
    SerialDb db;
    for (std::size_t i{0}; i < official_apks.size(); ++i) {
        try {
            const auto summary{parse_apk(official_apks[i])};
            db.add(summary.package_name, summary.cert_serial);
        } catch (const ApkError& e) {
            throw SerialDbBuildError{i, e};
        }
    }
    return db;
}

}  // namespace appgate::apk
