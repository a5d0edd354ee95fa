// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/apk/apk.hpp>
#include <appgate/apk/serial_db.hpp>
#include <appgate/crypto.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>

using namespace appgate;

int main(int argc, char** argv) {
    CLI::App app{"apkcheck: package, version and signing serial of an APK"};
    app.require_subcommand(1);
    std::string file, db_path;
    auto* inspect{app.add_subcommand("inspect", "print the APK summary")};
    inspect->add_option("file", file)->required()->check(CLI::ExistingFile);
    inspect->add_option("--serialdb", db_path, "official serial database for a repackaging verdict");
    CLI11_PARSE(app, argc, argv);

    std::ifstream in{file, std::ios::binary};
    const Bytes bytes{std::istreambuf_iterator<char>{in}, std::istreambuf_iterator<char>{}};
    try {
        const auto s{apk::parse_apk(bytes)};
        std::cout << "packageName\t" << s.package_name << "\nversionName\t" << s.version_name << "\ncertSerial\t"
                  << s.cert_serial.hex() << "\nsha256\t" << to_hex(sha256(bytes)) << "\nmd5\t" << to_hex(md5(bytes)) << '\n';
        if (!db_path.empty()) {
            const auto outcome{apk::repack_check(s, apk::SerialDb::load(db_path))};
            std::cout << "repackVerdict\t" << registry::to_string(outcome.verdict) << "\ndetail\t" << outcome.detail << '\n';
        }
    } catch (const apk::ApkError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    return 0;
}
