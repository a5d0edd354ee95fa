// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace appgate::market {

enum class MarketErrc {
    unknown_market,
    pattern_mismatch,
    extraction_failed,
    checksum_source_missing,
    rewrite_inapplicable,
    retrieval_failed,
};

std::string_view to_string(MarketErrc) noexcept;

class MarketError : public std::runtime_error {
  public:
    MarketError(MarketErrc code, const std::string& what);
    [[nodiscard]] MarketErrc code() const noexcept { return code_; }

  private:
    MarketErrc code_;
};

}  // namespace appgate::market
