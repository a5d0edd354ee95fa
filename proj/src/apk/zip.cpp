// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/apk/zip.hpp>

#include <zlib.h>

#include <algorithm>
#include <limits>

namespace appgate::apk {

std::string_view to_string(ApkErrc code) noexcept {
    switch (code) {
        case ApkErrc::not_a_zip: return "NotAZip";
        case ApkErrc::missing_manifest: return "MissingManifest";
        case ApkErrc::missing_signature: return "MissingSignature";
        case ApkErrc::malformed_der: return "MalformedDer";
    }
    return "Unknown";
}

ApkError::ApkError(ApkErrc code, const std::string& what)
    : std::runtime_error{std::string{to_string(code)} + ": " + what}, code_{code} {}

namespace {

constexpr std::uint32_t kLocalSig{0x04034b50};
constexpr std::uint32_t kCentralSig{0x02014b50};
constexpr std::uint32_t kEndSig{0x06054b50};
constexpr std::size_t kEndSize{22};
constexpr std::size_t kCentralSize{46};
constexpr std::size_t kLocalSize{30};
constexpr std::uint16_t kDosDate{0x0021};

[[noreturn]] void bad(const std::string& what) { throw ApkError{ApkErrc::not_a_zip, what}; }

std::uint16_t le16(ByteView b, std::size_t at) {
    if (at > b.size() || b.size() - at < 2) bad("truncated field");
    return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t le32(ByteView b, std::size_t at) {
    if (at > b.size() || b.size() - at < 4) bad("truncated field");
    return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
           (static_cast<std::uint32_t>(b[at + 2]) << 16) | (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

ByteView slice(ByteView b, std::size_t at, std::size_t n) {
    if (at > b.size() || b.size() - at < n) bad("range outside archive");
    return b.subspan(at, n);
}

Bytes inflate_raw(ByteView in, std::size_t expected) {
    Bytes out(expected);
    z_stream zs{};
    if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) bad("inflate init");
    zs.next_in = const_cast<Bytef*>(in.data());
    zs.avail_in = static_cast<uInt>(in.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc{inflate(&zs, Z_FINISH)};
    const auto produced{zs.total_out};
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || produced != expected) bad("deflate stream does not match declared size");
    return out;
}

std::uint32_t crc_of(ByteView b) {
    return static_cast<std::uint32_t>(crc32(0L, b.data(), static_cast<uInt>(b.size())));
}

std::size_t find_end_record(ByteView b) {
    if (b.size() < kEndSize) bad("too short for an end-of-central-directory record");
    const std::size_t lowest{b.size() > kEndSize + 0xffff ? b.size() - kEndSize - 0xffff : 0};
    for (std::size_t at{b.size() - kEndSize};; --at) {
        if (le32(b, at) == kEndSig && at + kEndSize + le16(b, at + 20) == b.size()) return at;
        if (at == lowest) break;
    }
    bad("no end-of-central-directory record");
}

}  // namespace

ZipArchive ZipArchive::parse(ByteView b) {
    const auto end{find_end_record(b)};
    if (le16(b, end + 4) != 0 || le16(b, end + 6) != 0) bad("multi-disk archives are not supported");
    const std::size_t count{le16(b, end + 10)};
    if (le16(b, end + 8) != count) bad("entry counts disagree");
    const std::size_t cd_size{le32(b, end + 12)};
    const std::size_t cd_offset{le32(b, end + 16)};
    if (cd_offset == 0xffffffff || count == 0xffff) bad("Zip64 is not supported");
    const auto cd{slice(b, cd_offset, cd_size)};

    ZipArchive archive;
    std::size_t at{0};
    for (std::size_t i{0}; i < count; ++i) {
        if (le32(cd, at) != kCentralSig) bad("bad central directory signature");
        const auto flags{le16(cd, at + 8)};
        const auto method{le16(cd, at + 10)};
        const auto crc{le32(cd, at + 16)};
        const std::size_t csize{le32(cd, at + 20)};
        const std::size_t usize{le32(cd, at + 24)};
        const std::size_t name_len{le16(cd, at + 28)};
        const std::size_t extra_len{le16(cd, at + 30)};
        const std::size_t comment_len{le16(cd, at + 32)};
        const std::size_t local{le32(cd, at + 42)};
        const auto name{slice(cd, at + kCentralSize, name_len)};
        at += kCentralSize + name_len + extra_len + comment_len;
        if (at > cd.size()) bad("central directory overrun");
        if (flags & 0x0001) bad("encrypted entries are not supported");
        if (usize > kMaxEntrySize) bad("entry exceeds size limit");

        if (le32(b, local) != kLocalSig) bad("bad local header signature");
        const std::size_t data_at{local + kLocalSize + le16(b, local + 26) + le16(b, local + 28)};
        const auto raw{slice(b, data_at, csize)};

        ZipEntry entry{std::string{name.begin(), name.end()}, {}};
        switch (method) {
            case 0:
                if (csize != usize) bad("stored entry sizes disagree");
                entry.data.assign(raw.begin(), raw.end());
                break;
            case 8:
                entry.data = inflate_raw(raw, usize);
                break;
            default:
                bad("unsupported compression method " + std::to_string(method));
        }
        if (crc_of(entry.data) != crc) bad("CRC mismatch in " + entry.name);
        archive.entries_.push_back(std::move(entry));
    }
    return archive;
}

const ZipEntry* ZipArchive::find(std::string_view name) const noexcept {
    const auto it{std::find_if(entries_.begin(), entries_.end(), [&](const ZipEntry& e) { return e.name == name; })};
    return it == entries_.end() ? nullptr : &*it;
}

namespace {

void put16(Bytes& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put32(Bytes& out, std::uint32_t v) {
    put16(out, v & 0xffff);
    put16(out, v >> 16);
}

Bytes deflate_raw(ByteView in) {
    z_stream zs{};
    if (deflateInit2(&zs, 6, Z_DEFLATED, -MAX_WBITS, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
        throw std::runtime_error{"deflateInit2 failed"};
    }
    Bytes out(deflateBound(&zs, static_cast<uLong>(in.size())));
    zs.next_in = const_cast<Bytef*>(in.data());
    zs.avail_in = static_cast<uInt>(in.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc{deflate(&zs, Z_FINISH)};
    out.resize(zs.total_out);
    deflateEnd(&zs);
    if (rc != Z_STREAM_END) throw std::runtime_error{"deflate failed"};
    return out;
}

}  // namespace

Bytes write_zip(const std::vector<ZipEntry>& entries, bool deflate) {
    if (entries.size() >= 0xffff) throw std::length_error{"too many zip entries"};
    Bytes out;
    Bytes central;
    for (const auto& e : entries) {
        if (e.name.size() > 0xffff || e.data.size() > kMaxEntrySize) throw std::length_error{"zip entry too large"};
        const std::uint16_t method{static_cast<std::uint16_t>(deflate ? 8 : 0)};
        const Bytes packed{deflate ? deflate_raw(e.data) : e.data};
        const auto crc{crc_of(e.data)};
        const auto offset{static_cast<std::uint32_t>(out.size())};
        const auto header = [&](Bytes& dst, bool central_record) {
            put32(dst, central_record ? kCentralSig : kLocalSig);
            if (central_record) put16(dst, 20);
            put16(dst, 20);
            put16(dst, 0);
            put16(dst, method);
            put16(dst, 0);
            put16(dst, kDosDate);
            put32(dst, crc);
            put32(dst, static_cast<std::uint32_t>(packed.size()));
            put32(dst, static_cast<std::uint32_t>(e.data.size()));
            put16(dst, static_cast<std::uint32_t>(e.name.size()));
            put16(dst, 0);
            if (central_record) {
                put16(dst, 0);
                put16(dst, 0);
                put16(dst, 0);
                put32(dst, 0);
                put32(dst, offset);
            }
            dst.insert(dst.end(), e.name.begin(), e.name.end());
        };
        header(out, false);
        out.insert(out.end(), packed.begin(), packed.end());
        header(central, true);
    }
    const auto cd_offset{static_cast<std::uint32_t>(out.size())};
    out.insert(out.end(), central.begin(), central.end());
    put32(out, kEndSig);
    put16(out, 0);
    put16(out, 0);
    put16(out, static_cast<std::uint32_t>(entries.size()));
    put16(out, static_cast<std::uint32_t>(entries.size()));
    put32(out, static_cast<std::uint32_t>(central.size()));
    put32(out, cd_offset);
    put16(out, 0);
    return out;
}

}  // namespace appgate::apk
