// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/apk/apk.hpp>
#include <appgate/apk/zip.hpp>
#include <appgate/crypto.hpp>
#include <appgate/fixtures/apk_builder.hpp>

#include <openssl/bio.h>
#include <openssl/bn.h>
#include <openssl/evp.h>
#include <openssl/pkcs7.h>
#include <openssl/x509.h>

#include <stdexcept>

namespace appgate::fixtures {
namespace {

template <typename T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const noexcept { Free(p); }
};
using PkeyPtr = std::unique_ptr<EVP_PKEY, Deleter<EVP_PKEY, EVP_PKEY_free>>;
using X509Ptr = std::unique_ptr<X509, Deleter<X509, X509_free>>;
using BioPtr = std::unique_ptr<BIO, Deleter<BIO, BIO_free_all>>;
using Pkcs7Ptr = std::unique_ptr<PKCS7, Deleter<PKCS7, PKCS7_free>>;
using BnPtr = std::unique_ptr<BIGNUM, Deleter<BIGNUM, BN_free>>;

[[noreturn]] void fail(const char* what) { throw std::runtime_error{std::string{"openssl: "} + what}; }

}  // namespace

struct SigningKey::Impl {
    PkeyPtr key;
    X509Ptr cert;
};

SigningKey::SigningKey(std::unique_ptr<Impl> impl, SerialNumber serial, KeyType type)
    : impl_{std::move(impl)}, serial_{std::move(serial)}, type_{type} {}
SigningKey::SigningKey(SigningKey&&) noexcept = default;
SigningKey& SigningKey::operator=(SigningKey&&) noexcept = default;
SigningKey::~SigningKey() = default;

SigningKey SigningKey::generate(const SerialNumber& serial, const std::string& common_name, KeyType type) {
    auto impl{std::make_unique<Impl>()};
    impl->key.reset(type == KeyType::rsa2048 ? EVP_RSA_gen(2048) : EVP_EC_gen("P-256"));
    if (!impl->key) fail("key generation");

    impl->cert.reset(X509_new());
    X509* cert{impl->cert.get()};
    if (!cert || X509_set_version(cert, 2) != 1) fail("X509_new");
    const auto& mag{serial.bytes()};
    BnPtr bn{BN_bin2bn(mag.data(), static_cast<int>(mag.size()), nullptr)};
    if (!bn || !BN_to_ASN1_INTEGER(bn.get(), X509_get_serialNumber(cert))) fail("serial");
    ASN1_TIME_set(X509_getm_notBefore(cert), 1'577'836'800);  // 2020-01-01
    ASN1_TIME_set(X509_getm_notAfter(cert), 2'524'608'000);   // 2050-01-01
    X509_NAME* name{X509_get_subject_name(cert)};
    X509_NAME_add_entry_by_txt(name, "CN", MBSTRING_UTF8, reinterpret_cast<const unsigned char*>(common_name.c_str()),
                               -1, -1, 0);
    X509_set_issuer_name(cert, name);
    if (X509_set_pubkey(cert, impl->key.get()) != 1) fail("pubkey");
    if (X509_sign(cert, impl->key.get(), EVP_sha256()) <= 0) fail("X509_sign");
    return SigningKey{std::move(impl), serial, type};
}

Bytes SigningKey::sign(ByteView data, const std::vector<const SigningKey*>& extra_certs) const {
    BioPtr in{BIO_new_mem_buf(data.data(), static_cast<int>(data.size()))};
    STACK_OF(X509)* chain{sk_X509_new_null()};
    for (const auto* k : extra_certs) sk_X509_push(chain, k->impl_->cert.get());
    Pkcs7Ptr p7{PKCS7_sign(impl_->cert.get(), impl_->key.get(), chain, in.get(),
                           PKCS7_DETACHED | PKCS7_BINARY | PKCS7_NOATTR)};
    sk_X509_free(chain);
    if (!p7) fail("PKCS7_sign");
    unsigned char* der{nullptr};
    const int len{i2d_PKCS7(p7.get(), &der)};
    if (len <= 0) fail("i2d_PKCS7");
    Bytes out(der, der + len);
    OPENSSL_free(der);
    return out;
}

namespace {

std::string base64(ByteView b) {
    std::string out(4 * ((b.size() + 2) / 3) + 1, '\0');
    const int n{EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), b.data(), static_cast<int>(b.size()))};
    out.resize(static_cast<std::size_t>(n));
    return out;
}

Bytes sign_entries(std::vector<apk::ZipEntry> entries, const SigningKey& key, bool deflate,
                   const std::vector<const SigningKey*>& extra_certs) {
    std::string manifest{"Manifest-Version: 1.0\r\nCreated-By: appgate fixtures\r\n\r\n"};
    for (const auto& e : entries) {
        manifest += "Name: " + e.name + "\r\nSHA-256-Digest: " + base64(sha256(e.data)) + "\r\n\r\n";
    }
    const std::string sf{"Signature-Version: 1.0\r\nSHA-256-Digest-Manifest: " + base64(sha256(as_view(manifest))) +
                         "\r\nCreated-By: appgate fixtures\r\n\r\n"};
    entries.push_back({"META-INF/MANIFEST.MF", to_bytes(manifest)});
    entries.push_back({"META-INF/CERT.SF", to_bytes(sf)});
    entries.push_back({"META-INF/CERT." + key.block_suffix(), key.sign(to_bytes(sf), extra_certs)});
    return apk::write_zip(entries, deflate);
}

}  // namespace

Bytes build_apk(const ApkSpec& spec, const SigningKey& key, bool deflate,
                const std::vector<const SigningKey*>& extra_certs) {
    std::vector<apk::ZipEntry> entries;
    entries.push_back({std::string{apk::kManifestEntry},
                       to_bytes("package=" + spec.package_name + "\nversionName=" + spec.version_name + "\n")});
    for (const auto& [name, data] : spec.files) entries.push_back({name, data});
    return sign_entries(std::move(entries), key, deflate, extra_certs);
}

Bytes resign_apk(ByteView apk_bytes, const SigningKey& key) {
    const auto archive{apk::ZipArchive::parse(apk_bytes)};
    std::vector<apk::ZipEntry> entries;
    for (const auto& e : archive.entries()) {
        if (e.name.rfind("META-INF/", 0) != 0) entries.push_back(e);
    }
    return sign_entries(std::move(entries), key, true, {});
}

}  // namespace appgate::fixtures
