// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/fixtures/records.hpp>

#include <array>

namespace appgate::fixtures {
namespace {

constexpr std::array<std::string_view, 24> kWords{
    "android", "tencent", "mobile",  "music",   "player", "camera", "qq",     "weather",
    "browser", "reader",  "map",     "wallet",  "chat",   "video",  "photo",  "launcher",
    "game",    "news",    "mail",    "keyboard", "office", "fitness", "notes", "scanner"};
constexpr std::array<std::string_view, 6> kTlds{"com", "org", "net", "cn", "io", "de"};
constexpr std::array<std::string_view, 7> kHosts{"shouji.baidu.com", "zhushou.360.cn",  "app.mi.com",
                                                 "www.anzhi.com",    "app.meizu.com",   "www.wandoujia.com",
                                                 "github.com"};

template <typename C>
std::string_view pick(const C& c, std::mt19937_64& rng) {
    return c[std::uniform_int_distribution<std::size_t>{0, c.size() - 1}(rng)];
}

int between(int lo, int hi, std::mt19937_64& rng) { return std::uniform_int_distribution<int>{lo, hi}(rng); }

}  // namespace

registry::AppRecord random_record(std::mt19937_64& rng) {
    registry::AppRecord r;
    r.package_name = std::string{pick(kTlds, rng)};
    const int parts{between(2, 3, rng)};
    for (int i{0}; i < parts; ++i) r.package_name += "." + std::string{pick(kWords, rng)};

    r.version = std::to_string(between(1, 12, rng)) + "." + std::to_string(between(0, 20, rng)) + "." +
                std::to_string(between(0, 99, rng));
    if (between(0, 3, rng) == 0) r.version += "." + std::to_string(between(100, 9999, rng));

    Bytes serial(static_cast<std::size_t>(between(4, 20, rng)));
    for (auto& b : serial) b = static_cast<std::uint8_t>(between(0, 255, rng));
    serial.front() = static_cast<std::uint8_t>(between(1, 0x7f, rng));
    r.cert_serial = SerialNumber::from_bytes(serial);

    r.origin_url = "https://" + std::string{pick(kHosts, rng)} + "/app/" + std::to_string(between(1000, 99'999'999, rng));
    r.repack_verdict = static_cast<registry::RepackVerdict>(between(0, 2, rng));

    Bytes blob(64);
    for (auto& b : blob) b = static_cast<std::uint8_t>(between(0, 255, rng));
    r.content_id = castore::ContentId::of(blob);
    return r;
}

registry::AppRecord typical_record() {
    return {"com.tencent.mobileqq",
            "8.4.1",
            SerialNumber::from_uint(0x706a633e),
            "http://shouji.baidu.com/software/26834123.html",
            registry::RepackVerdict::pass,
            castore::ContentId::of(to_bytes("typical"))};
}

}  // namespace appgate::fixtures
