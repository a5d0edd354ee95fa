// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <appgate/bytes.hpp>
#include <appgate/serial_number.hpp>

namespace appgate::fixtures {

enum class KeyType { ec_p256, rsa2048 };

//! A self-signed test certificate with a chosen serial and its private key.
class SigningKey {
  public:
    static SigningKey generate(const SerialNumber& serial, const std::string& common_name = "appgate test",
                               KeyType type = KeyType::ec_p256);

    SigningKey(SigningKey&&) noexcept;
    SigningKey& operator=(SigningKey&&) noexcept;
    ~SigningKey();

    [[nodiscard]] const SerialNumber& serial() const noexcept { return serial_; }
    [[nodiscard]] KeyType type() const noexcept { return type_; }
    //! Signature block file suffix: "RSA" or "EC".
    [[nodiscard]] std::string block_suffix() const { return type_ == KeyType::rsa2048 ? "RSA" : "EC"; }

    //! Detached PKCS#7 SignedData over data, DER. Extra certificates follow the signer's.
    [[nodiscard]] Bytes sign(ByteView data, const std::vector<const SigningKey*>& extra_certs = {}) const;

  private:
    struct Impl;
    explicit SigningKey(std::unique_ptr<Impl> impl, SerialNumber serial, KeyType type);
    std::unique_ptr<Impl> impl_;
    SerialNumber serial_;
    KeyType type_;
};

struct ApkSpec {
    std::string package_name;
    std::string version_name;
    //! Additional entries, e.g. {"classes.dex", ...}.
    std::vector<std::pair<std::string, Bytes>> files;
};

//! AndroidManifest.properties, the extra files, META-INF/MANIFEST.MF, CERT.SF and CERT.<RSA|EC>.
Bytes build_apk(const ApkSpec& spec, const SigningKey& key, bool deflate = true,
                const std::vector<const SigningKey*>& extra_certs = {});

//! Same content, re-signed: the repackaging operation.
Bytes resign_apk(ByteView apk, const SigningKey& key);

}  // namespace appgate::fixtures
