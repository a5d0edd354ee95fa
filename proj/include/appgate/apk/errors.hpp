// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace appgate::apk {

enum class ApkErrc { not_a_zip, missing_manifest, missing_signature, malformed_der };

std::string_view to_string(ApkErrc) noexcept;

class ApkError : public std::runtime_error {
  public:
    ApkError(ApkErrc code, const std::string& what);
    [[nodiscard]] ApkErrc code() const noexcept { return code_; }

  private:
    ApkErrc code_;
};

}  // namespace appgate::apk
