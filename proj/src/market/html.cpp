// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/market/html.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <regex>
#include <sstream>

namespace appgate::market::html {
namespace {

bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':'; }
bool space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string lower(std::string_view s) {
    std::string out{s};
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::size_t find_ci(std::string_view hay, std::string_view needle, std::size_t from) {
    const auto it{std::search(hay.begin() + static_cast<std::ptrdiff_t>(std::min(from, hay.size())), hay.end(),
                              needle.begin(), needle.end(), [](char a, char b) {
                                  return std::tolower(static_cast<unsigned char>(a)) ==
                                         std::tolower(static_cast<unsigned char>(b));
                              })};
    return it == hay.end() ? std::string_view::npos : static_cast<std::size_t>(it - hay.begin());
}

}  // namespace

bool Element::has_class(std::string_view cls) const {
    const auto it{attrs.find("class")};
    if (it == attrs.end()) return false;
    std::istringstream in{it->second};
    for (std::string c; in >> c;) {
        if (c == cls) return true;
    }
    return false;
}

namespace {

// "&#65;" or "&#x41;" at the start of ref; advances pos past it on success.
std::optional<std::uint32_t> numeric_reference(std::string_view ref, std::size_t& pos) {
    const bool hex{ref.size() > 2 && (ref[2] == 'x' || ref[2] == 'X')};
    const std::size_t start{hex ? 3u : 2u};
    const auto end{ref.find(';', start)};
    if (end == std::string_view::npos || end == start || end - start > 8) return std::nullopt;
    std::uint32_t cp{0};
    const auto [ptr, ec]{std::from_chars(ref.data() + start, ref.data() + end, cp, hex ? 16 : 10)};
    if (ec != std::errc{} || ptr != ref.data() + end || cp == 0 || cp > 0x10ffff) return std::nullopt;
    pos += end + 1;
    return cp;
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
        out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
}

}  // namespace

std::string decode_entities(std::string_view text) {
    static const std::pair<std::string_view, char> kNamed[]{
        {"&amp;", '&'}, {"&quot;", '"'}, {"&#39;", '\''}, {"&apos;", '\''}, {"&lt;", '<'}, {"&gt;", '>'}};
    std::string out;
    for (std::size_t i{0}; i < text.size();) {
        bool hit{false};
        if (text[i] == '&' && text.substr(i, 2) == "&#") {
            if (const auto cp{numeric_reference(text.substr(i), i)}) {
                append_utf8(out, *cp);
                continue;
            }
        }
        if (text[i] == '&') {
            for (const auto& [name, ch] : kNamed) {
                if (text.substr(i, name.size()) == name) {
                    out.push_back(ch);
                    i += name.size();
                    hit = true;
                    break;
                }
            }
        }
        if (!hit) out.push_back(text[i++]);
    }
    return out;
}

std::vector<Element> scan(std::string_view h) {
    std::vector<Element> out;
    std::size_t i{0};
    while ((i = h.find('<', i)) != std::string_view::npos) {
        if (h.substr(i, 4) == "<!--") {
            const auto end{h.find("-->", i + 4)};
            if (end == std::string_view::npos) break;
            i = end + 3;
            continue;
        }
        if (i + 1 >= h.size() || !std::isalpha(static_cast<unsigned char>(h[i + 1]))) {
            ++i;
            continue;
        }
        Element e;
        std::size_t p{i + 1};
        while (p < h.size() && name_char(h[p])) ++p;
        e.tag = lower(h.substr(i + 1, p - i - 1));
        while (p < h.size() && h[p] != '>') {
            if (space(h[p]) || h[p] == '/') {
                ++p;
                continue;
            }
            const auto name_start{p};
            while (p < h.size() && !space(h[p]) && h[p] != '=' && h[p] != '>' && h[p] != '/') ++p;
            const auto name{lower(h.substr(name_start, p - name_start))};
            while (p < h.size() && space(h[p])) ++p;
            std::string value;
            if (p < h.size() && h[p] == '=') {
                ++p;
                while (p < h.size() && space(h[p])) ++p;
                if (p < h.size() && (h[p] == '"' || h[p] == '\'')) {
                    const char q{h[p]};
                    const auto end{h.find(q, p + 1)};
                    if (end == std::string_view::npos) return out;
                    value = decode_entities(h.substr(p + 1, end - p - 1));
                    p = end + 1;
                } else {
                    const auto start{p};
                    while (p < h.size() && !space(h[p]) && h[p] != '>') ++p;
                    value = decode_entities(h.substr(start, p - start));
                }
            }
            if (!name.empty()) e.attrs.emplace(name, std::move(value));
        }
        i = p < h.size() ? p + 1 : h.size();
        if (e.tag == "script") {
            const auto end{find_ci(h, "</script", i)};
            e.text = std::string{h.substr(i, end == std::string_view::npos ? std::string_view::npos : end - i)};
            i = end == std::string_view::npos ? h.size() : end;
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::optional<Selector> Selector::parse(std::string_view text) {
    const auto at{text.rfind('@')};
    if (at == std::string_view::npos || at + 1 == text.size()) return std::nullopt;
    Selector s;
    s.attr = lower(text.substr(at + 1));
    auto head{text.substr(0, at)};
    const auto mark{head.find_first_of(".#")};
    s.tag = lower(head.substr(0, mark));
    if (mark != std::string_view::npos) {
        const auto rest{std::string{head.substr(mark + 1)}};
        if (rest.empty() || rest.find_first_of(".#") != std::string::npos) return std::nullopt;
        (head[mark] == '.' ? s.cls : s.id) = rest;
    }
    if (s.tag.empty() && s.cls.empty() && s.id.empty()) return std::nullopt;
    return s;
}

bool Selector::matches(const Element& e) const {
    if (!tag.empty() && e.tag != tag) return false;
    if (!cls.empty() && !e.has_class(cls)) return false;
    if (!id.empty()) {
        const auto it{e.attrs.find("id")};
        if (it == e.attrs.end() || it->second != id) return false;
    }
    return e.attrs.contains(attr);
}

std::optional<std::string> select_attr(std::string_view page, const Selector& selector) {
    for (const auto& e : scan(page)) {
        if (selector.matches(e)) return e.attrs.at(selector.attr);
    }
    return std::nullopt;
}

std::optional<std::string> script_value(std::string_view page, std::string_view key) {
    std::string escaped;
    for (const char c : key) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') escaped.push_back('\\');
        escaped.push_back(c);
    }
    const std::regex re{"(?:^|[^A-Za-z0-9_$])[\"']?" + escaped + "[\"']?\\s*[:=]\\s*([\"'])([^\"']*)\\1"};
    for (const auto& e : scan(page)) {
        if (e.tag != "script") continue;
        std::smatch m;
        if (std::regex_search(e.text, m, re)) return m[2].str();
    }
    return std::nullopt;
}

}  // namespace appgate::market::html
