// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/apk/apk.hpp>
#include <appgate/fixtures/market_corpus.hpp>
#include <appgate/market/extract.hpp>
#include <appgate/market/fetcher.hpp>
#include <appgate/market/html.hpp>
#include <appgate/market/pattern.hpp>
#include <appgate/market/url.hpp>
#include <appgate/market/verify.hpp>

#include <gtest/gtest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include <fstream>
#include <thread>

using namespace appgate;
using namespace appgate::market;

namespace {

const fixtures::Corpus& corpus() {
    static const auto c{fixtures::build_corpus()};
    return c;
}

MarketErrc error_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const MarketError& e) {
        return e.code();
    }
    ADD_FAILURE() << "no MarketError";
    return MarketErrc::unknown_market;
}

MarketPattern pattern(DownloadUrlRule rule, ChecksumSource sum = NoChecksum{}, bool secure = false) {
    MarketPattern p;
    p.market_id = "m";
    p.page_url_pattern = "^https?://m\\.test/.*$";
    p.download_rule = std::move(rule);
    p.checksum_source = std::move(sum);
    p.transport_secure = secure;
    p.compile();
    return p;
}

}  // namespace

TEST(Url, ParseAndResolve) {
    const auto u{parse_url("HTTP://Market-A.test:8080/app/x?y=1#frag")};
    ASSERT_TRUE(u);
    EXPECT_EQ(u->scheme, "http");
    EXPECT_EQ(u->host, "market-a.test");
    EXPECT_EQ(u->port, "8080");
    EXPECT_EQ(u->path, "/app/x?y=1");
    EXPECT_FALSE(parse_url("ftp://x/y"));
    EXPECT_FALSE(parse_url("/relative"));
    const auto base{*parse_url("http://m.test/a/b.html")};
    EXPECT_EQ(resolve_url(base, "c.apk"), "http://m.test/a/c.apk");
    EXPECT_EQ(resolve_url(base, "/d.apk"), "http://m.test/d.apk");
    EXPECT_EQ(resolve_url(base, "//cdn.test/e.apk"), "http://cdn.test/e.apk");
    EXPECT_EQ(resolve_url(base, "https://x.test/f"), "https://x.test/f");
}

TEST(Html, ScanAndSelect) {
    const std::string page{
        "<!-- <a class=\"download\" href=\"/fake\"> -->"
        "<A CLASS=\"btn download\" HREF=\"/dl/x.apk?a=1&amp;b=2\">get</A>"
        "<div id=\"dl\" data-url='http://c.test/download?id=1'></div>"
        "<script>var cfg = {downloadUrl: \"http://d.test/x.apk\", 'md5':'0123456789abcdef0123456789abcdef'};</script>"};
    EXPECT_EQ(html::select_attr(page, *html::Selector::parse("a.download@href")), "/dl/x.apk?a=1&b=2");
    EXPECT_EQ(html::select_attr(page, *html::Selector::parse("#dl@data-url")), "http://c.test/download?id=1");
    EXPECT_FALSE(html::select_attr(page, *html::Selector::parse("a.missing@href")));
    EXPECT_EQ(html::script_value(page, "downloadUrl"), "http://d.test/x.apk");
    EXPECT_EQ(html::script_value(page, "md5"), "0123456789abcdef0123456789abcdef");
    EXPECT_FALSE(html::script_value(page, "nothing"));
    EXPECT_FALSE(html::Selector::parse("a.download"));
    EXPECT_EQ(html::decode_entities("&lt;&amp;&#65;&#x42;&quot;"), "<&AB\"");
    EXPECT_EQ(html::decode_entities("caf&#233; &#x;&#0; &bogus;"), "caf\xc3\xa9 &#x;&#0; &bogus;");
}

TEST(Pattern, RegistryParsesAndMatches) {
    const auto reg{PatternRegistry::parse(fixtures::fixture_markets_json())};
    EXPECT_EQ(reg.patterns().size(), 9u);
    EXPECT_EQ(reg.match("http://market-a.test/app/x1").market_id, "urlsum-a");
    EXPECT_EQ(reg.match("https://github.com/o/r/blob/main/app.apk").market_id, "github");
    EXPECT_EQ(error_of([&] { (void)reg.match("http://unknown.test/app/1"); }), MarketErrc::unknown_market);
    EXPECT_EQ(reg.find("http://market-a.test/app/x1/../../etc"), nullptr);
    EXPECT_TRUE(reg.by_id("rewrite-e")->rewrites());
    EXPECT_TRUE(reg.by_id("script-d")->has_checksum());
}

TEST(Pattern, ShippedRegistryEqualsFixtureRegistry) {
    std::ifstream in{std::filesystem::path{APPGATE_DATA_DIR} / "markets.json"};
    const auto shipped = nlohmann::json::parse(in);
    EXPECT_EQ(shipped, nlohmann::json::parse(fixtures::fixture_markets_json()));
}

TEST(Pattern, RejectsBadDefinitions) {
    EXPECT_THROW(PatternRegistry::parse(R"({"markets":[{"id":"x","pageUrlPattern":"(","download":{"rule":"direct"}}]})"),
                 std::exception);
    EXPECT_THROW(PatternRegistry::parse(R"({"markets":[{"id":"x","pageUrlPattern":"a","download":{"rule":"teleport"}}]})"),
                 std::exception);
    EXPECT_THROW(PatternRegistry::parse("not json"), std::exception);
}

TEST(Extract, RulesResolveDownloadUrls) {
    const std::string page{"<a class=\"get\" href=\"files/a.apk\">x</a> see http://cdn.m.test/f/b.apk "
                           "<script>var o = {apkUrl: \"//s.m.test/c.apk\"};</script>"};
    const std::string url{"http://m.test/app/1"};
    EXPECT_EQ(resolve_download_url(pattern(HtmlAttribute{"a.get@href"}), page, url), "http://m.test/app/files/a.apk");
    EXPECT_EQ(resolve_download_url(pattern(UrlEmbedded{}), page, url), "http://cdn.m.test/f/b.apk");
    EXPECT_EQ(resolve_download_url(pattern(ScriptEmbedded{"apkUrl"}), page, url), "http://s.m.test/c.apk");
    EXPECT_EQ(resolve_download_url(pattern(HttpsRewrite{"a.get@href", {}}), page, url), "https://m.test/app/files/a.apk");
    EXPECT_EQ(resolve_download_url(pattern(Direct{}), "", "https://m.test/x.apk"), "https://m.test/x.apk");
    EXPECT_EQ(error_of([&] { resolve_download_url(pattern(HtmlAttribute{"a.none@href"}), page, url); }),
              MarketErrc::extraction_failed);
    EXPECT_EQ(error_of([&] { resolve_download_url(pattern(Direct{}), "", "http://other.test/x"); }),
              MarketErrc::pattern_mismatch);
}

TEST(Extract, Checksums) {
    const std::string md5{"0123456789abcdef0123456789abcdef"};
    const auto in_url{pattern(Direct{}, ChecksumInDownloadUrl{})};
    EXPECT_EQ(extract_checksum(in_url, "", "http://m.test/dl/" + md5 + ".apk"), md5);
    EXPECT_EQ(extract_checksum(in_url, "", "http://m.test/f/app_" + md5 + ".apk"), md5);
    EXPECT_EQ(extract_checksum(in_url, "", "http://m.test/download?id=3&md5=" + md5), md5);
    EXPECT_EQ(extract_checksum(in_url, "", "http://m.test/dl/ABCDEF" + md5.substr(6) + ".apk"), "abcdef" + md5.substr(6));
    // a 40-hex run is not an md5
    EXPECT_EQ(error_of([&] { extract_checksum(in_url, "", "http://m.test/dl/" + md5 + "01234567.apk"); }),
              MarketErrc::checksum_source_missing);
    EXPECT_EQ(error_of([&] { extract_checksum(in_url, "", "http://m.test/dl/app.apk"); }),
              MarketErrc::checksum_source_missing);
    const auto in_script{pattern(Direct{}, ChecksumInScriptBlock{"md5"})};
    EXPECT_EQ(extract_checksum(in_script, "<script>x = {md5: \"" + md5 + "\"}</script>", "http://m.test/a"), md5);
    EXPECT_EQ(error_of([&] { extract_checksum(in_script, "<script>x = {md5: \"zz\"}</script>", "http://m.test/a"); }),
              MarketErrc::checksum_source_missing);
    EXPECT_FALSE(extract_checksum(pattern(Direct{}), "", "http://m.test/" + md5));
}

TEST(Extract, Rewrites) {
    EXPECT_EQ(https_rewrite({}, "http://a.test/x"), "https://a.test/x");
    EXPECT_EQ(https_rewrite({"cdn.e.test", "secure.e.test"}, "http://cdn.e.test/x.apk"), "https://secure.e.test/x.apk");
    EXPECT_EQ(error_of([] { https_rewrite({"cdn.e.test", "secure.e.test"}, "http://evil.test/x.apk"); }),
              MarketErrc::rewrite_inapplicable);
    EXPECT_EQ(raw_file_url("https://github.com/o/r/blob/v1/bin/app.apk"),
              "https://raw.githubusercontent.com/o/r/v1/bin/app.apk");
}

TEST(Verify, ChecksumVerdicts) {
    RetrievedApp app;
    app.bytes = to_bytes("apk bytes");
    app.declared_checksum = to_hex(md5(app.bytes));
    EXPECT_EQ(verify_checksum(app).channel, Channel::checksum_verified);
    app.declared_checksum = std::string{fixtures::kMitmDeclaredMd5};
    const auto v{verify_checksum(app)};
    EXPECT_EQ(v.channel, Channel::rejected);
    EXPECT_NE(v.detail.find(std::string{fixtures::kMitmDeclaredMd5}), std::string::npos);
    EXPECT_NE(v.detail.find(to_hex(md5(app.bytes))), std::string::npos);
}

TEST(Verify, AssessIsTotal) {
    RetrievedApp app;
    app.bytes = to_bytes("bytes");
    TrustAnchors anchors;
    const auto serial{SerialNumber::from_uint(5)};
    for (bool secure : {false, true}) {
        for (int checksum : {0, 1, 2}) {
            for (int fallback : {0, 1, 2}) {
                app.transport_secure = secure;
                app.declared_checksum = checksum == 0 ? std::nullopt
                                                      : std::optional{checksum == 1 ? to_hex(md5(app.bytes)) : std::string(32, '0')};
                anchors = {};
                if (fallback == 1) anchors.known_apps.insert(sha256(app.bytes));
                if (fallback == 2) anchors.developer_serials.insert(serial);
                const auto v{assess(app, anchors, serial)};
                if (checksum == 2) {
                    EXPECT_EQ(v.channel, Channel::rejected);
                } else if (checksum == 1) {
                    EXPECT_EQ(v.channel, Channel::checksum_verified);
                } else if (secure) {
                    EXPECT_EQ(v.channel, Channel::https_direct);
                } else {
                    EXPECT_EQ(v.channel, fallback == 0   ? Channel::unverified_warning
                                         : fallback == 1 ? Channel::known_app_match
                                                         : Channel::known_developer_match);
                }
            }
        }
    }
}

TEST(Corpus, EveryFixtureYieldsItsExpectedChannel) {
    const auto& c{corpus()};
    const auto reg{PatternRegistry::parse(fixtures::fixture_markets_json())};
    auto fetcher{c.fetcher()};
    std::set<Channel> seen;
    for (const auto& a : c.apps) {
        SCOPED_TRACE(a.market_id + "/" + a.slug);
        const auto& p{reg.match(a.page_url)};
        const std::string page{std::holds_alternative<Direct>(p.download_rule) ? "" : to_string(fetcher->get(a.page_url))};
        const auto dl{resolve_download_url(p, page, a.page_url)};
        EXPECT_EQ(dl, a.download_url);
        RetrievedApp r;
        r.bytes = fetcher->get(dl);
        r.declared_checksum = extract_checksum(p, page, dl);
        EXPECT_EQ(r.declared_checksum, a.declared_md5);
        r.rewritten = p.rewrites();
        r.transport_secure = p.secure_after_rule() && parse_url(dl)->secure();
        std::optional<SerialNumber> serial;
        try {
            serial = apk::parse_apk(r.bytes).cert_serial;
        } catch (const apk::ApkError&) {
            EXPECT_TRUE(a.tampered);
        }
        const auto v{assess(r, c.anchors, serial)};
        EXPECT_EQ(v.channel, a.expected_channel) << v.detail;
        seen.insert(v.channel);
    }
    EXPECT_EQ(seen.size(), 7u);
}

TEST(Fetcher, MapFetcherIgnoresScheme) {
    MapFetcher f;
    f.put("http://a.test/x", to_bytes("x"));
    EXPECT_EQ(to_string(f.get("https://a.test/x")), "x");
    EXPECT_EQ(error_of([&] { f.get("http://a.test/y"); }), MarketErrc::retrieval_failed);
    EXPECT_EQ(f.requests(), 2u);
}

TEST(Fetcher, HttpFetcherThroughHostAliases) {
    httplib::Server server;
    std::map<std::string, Bytes> resources{{"market-a.test/app/1", to_bytes("page a")},
                                           {"cdn.market-b.test/files/x.apk", to_bytes("apk b")}};
    mount_fixture_routes(server, resources);
    const int port{server.bind_to_any_port("127.0.0.1")};
    std::jthread t{[&] { server.listen_after_bind(); }};
    server.wait_until_ready();
    const std::string target{"127.0.0.1:" + std::to_string(port)};
    HttpFetcher fetcher{{{"market-a.test", target}, {"cdn.market-b.test", target}}, 2, std::chrono::seconds{5}};
    EXPECT_EQ(to_string(fetcher.get("http://market-a.test/app/1")), "page a");
    EXPECT_EQ(to_string(fetcher.get("http://cdn.market-b.test/files/x.apk")), "apk b");
    EXPECT_EQ(error_of([&] { fetcher.get("http://market-a.test/app/2"); }), MarketErrc::retrieval_failed);
    std::vector<std::jthread> parallel;
    std::atomic<int> ok{0};
    for (int i{0}; i < 8; ++i) {
        parallel.emplace_back([&] { ok += fetcher.get("http://market-a.test/app/1") == to_bytes("page a"); });
    }
    parallel.clear();
    EXPECT_EQ(ok, 8);
    server.stop();
}
