// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace appgate::market {

struct Url {
    std::string scheme;  // lowercase
    std::string host;    // lowercase, no port
    std::string port;    // empty when absent
    std::string path;    // starts with '/', includes the query, never the fragment

    [[nodiscard]] std::string authority() const { return port.empty() ? host : host + ":" + port; }
    [[nodiscard]] std::string str() const { return scheme + "://" + authority() + path; }
    [[nodiscard]] bool secure() const noexcept { return scheme == "https"; }
};

//! Absolute http(s) URLs only.
std::optional<Url> parse_url(std::string_view text);

//! Resolves an href against the page it appeared on.
std::string resolve_url(const Url& base, std::string_view ref);

}  // namespace appgate::market
