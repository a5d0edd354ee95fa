// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace appgate::market::html {

struct Element {
    std::string tag;                           // lowercase
    std::map<std::string, std::string> attrs;  // lowercase names, entity-decoded values
    std::string text;                          // raw body, filled for <script> only

    [[nodiscard]] bool has_class(std::string_view cls) const;
};

//! Start tags in document order. Comments and declarations are skipped.
std::vector<Element> scan(std::string_view html);

//! "tag.class@attr", "tag#id@attr", "#id@attr", "tag@attr".
struct Selector {
    std::string tag;
    std::string cls;
    std::string id;
    std::string attr;

    static std::optional<Selector> parse(std::string_view text);
    [[nodiscard]] bool matches(const Element& e) const;
};

std::optional<std::string> select_attr(std::string_view html, const Selector& selector);

//! Finds key: "v", "key": "v" or key = 'v' inside any <script> block.
std::optional<std::string> script_value(std::string_view html, std::string_view key);

std::string decode_entities(std::string_view text);

}  // namespace appgate::market::html
