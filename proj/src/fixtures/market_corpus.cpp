// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/crypto.hpp>
#include <appgate/fixtures/apk_builder.hpp>
#include <appgate/fixtures/market_corpus.hpp>
#include <appgate/market/url.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <iterator>
#include <random>
#include <sstream>

namespace appgate::fixtures {

using market::Channel;
using nlohmann::json;

std::string fixture_markets_json() {
    return R"json({
  "markets": [
    {"id": "urlsum-a", "pageUrlPattern": "^http://market-a\\.test/app/[A-Za-z0-9_-]+$", "transportSecure": false,
     "download": {"rule": "htmlAttribute", "selector": "a.download@href"},
     "checksum": {"source": "inDownloadUrl"}},
    {"id": "urlsum-b", "pageUrlPattern": "^http://market-b\\.test/detail/[A-Za-z0-9_-]+\\.html$", "transportSecure": false,
     "download": {"rule": "urlEmbedded", "regex": "(http://cdn\\.market-b\\.test/files/[^\"'<\\s]+\\.apk)"},
     "checksum": {"source": "inDownloadUrl"}},
    {"id": "urlsum-c", "pageUrlPattern": "^http://market-c\\.test/item\\?id=[A-Za-z0-9_-]+$", "transportSecure": false,
     "download": {"rule": "htmlAttribute", "selector": "#dl@data-url"},
     "checksum": {"source": "inDownloadUrl"}},
    {"id": "script-d", "pageUrlPattern": "^http://market-d\\.test/apps/[A-Za-z0-9_-]+$", "transportSecure": false,
     "download": {"rule": "scriptEmbedded", "key": "downloadUrl"},
     "checksum": {"source": "inScriptBlock", "key": "md5"}},
    {"id": "rewrite-e", "pageUrlPattern": "^http://market-e\\.test/app/[A-Za-z0-9_-]+$", "transportSecure": false,
     "download": {"rule": "httpsRewrite", "selector": "a.btn@href", "fromHost": "cdn.market-e.test", "toHost": "secure.market-e.test"},
     "checksum": {"source": "none"}},
    {"id": "plain-f", "pageUrlPattern": "^http://market-f\\.test/app/[A-Za-z0-9_-]+$", "transportSecure": false,
     "download": {"rule": "htmlAttribute", "selector": "a.get@href"},
     "checksum": {"source": "none"}},
    {"id": "plain-g", "pageUrlPattern": "^http://market-g\\.test/soft/[A-Za-z0-9_-]+\\.html$", "transportSecure": false,
     "download": {"rule": "scriptEmbedded", "key": "apkUrl"},
     "checksum": {"source": "none"}},
    {"id": "github", "pageUrlPattern": "^https://github\\.com/[A-Za-z0-9_.-]+/[A-Za-z0-9_.-]+/(blob|raw)/.+\\.apk$", "transportSecure": true,
     "download": {"rule": "direct"},
     "checksum": {"source": "none"}},
    {"id": "secure-h", "pageUrlPattern": "^https://market-h\\.test/app/[A-Za-z0-9_-]+$", "transportSecure": true,
     "download": {"rule": "htmlAttribute", "selector": "a.download@href"},
     "checksum": {"source": "none"}}
  ]
}
)json";
}

namespace {

struct Page {
    std::string page_url;
    std::string download_url;
    std::string html;
};

std::string wrap(const std::string& title, const std::string& body) {
    return "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>" + title +
           "</title></head>\n<body>\n<!-- fixture market page -->\n" + body + "\n</body></html>\n";
}

Page render(const std::string& market, const std::string& slug, const std::string& title, const std::string& md5) {
    Page p;
    if (market == "urlsum-a") {
        p.page_url = "http://market-a.test/app/" + slug;
        p.download_url = "http://market-a.test/dl/" + md5 + ".apk";
        p.html = wrap(title, "<h1>" + title + "</h1>\n<div class=\"info\"><a class=\"download primary\" href=\"/dl/" + md5 +
                                 ".apk\">Download</a></div>");
    } else if (market == "urlsum-b") {
        p.page_url = "http://market-b.test/detail/" + slug + ".html";
        p.download_url = "http://cdn.market-b.test/files/" + slug + "_" + md5 + ".apk";
        p.html = wrap(title, "<h2>" + title + "</h2>\n<p>Mirror: " + p.download_url + "</p>");
    } else if (market == "urlsum-c") {
        p.page_url = "http://market-c.test/item?id=" + slug;
        p.download_url = "http://market-c.test/download?id=" + slug + "&md5=" + md5;
        p.html = wrap(title, "<button id=\"dl\" data-url=\"/download?id=" + slug + "&amp;md5=" + md5 +
                                 "\">Install</button>");
    } else if (market == "script-d") {
        p.page_url = "http://market-d.test/apps/" + slug;
        p.download_url = "http://dl.market-d.test/pkg/" + slug + ".apk";
        p.html = wrap(title, "<div id=\"app\"></div>\n<script type=\"text/javascript\">\nvar appInfo = {\n  name: \"" + title +
                                 "\",\n  downloadUrl: \"" + p.download_url + "\",\n  md5: \"" + md5 + "\"\n};\n</script>");
    } else if (market == "rewrite-e") {
        p.page_url = "http://market-e.test/app/" + slug;
        p.download_url = "https://secure.market-e.test/apk/" + slug + ".apk";
        p.html = wrap(title, "<a class=\"btn\" href=\"http://cdn.market-e.test/apk/" + slug + ".apk\">Get</a>");
    } else if (market == "plain-f") {
        p.page_url = "http://market-f.test/app/" + slug;
        p.download_url = "http://market-f.test/files/" + slug + ".apk";
        p.html = wrap(title, "<ul><li><a class=\"get\" href=\"/files/" + slug + ".apk\">Download APK</a></li></ul>");
    } else if (market == "plain-g") {
        p.page_url = "http://market-g.test/soft/" + slug + ".html";
        p.download_url = "http://static.market-g.test/" + slug + ".apk";
        p.html = wrap(title, "<script>\nwindow.__DATA__ = {'apkUrl': '//static.market-g.test/" + slug + ".apk'};\n</script>");
    } else if (market == "github") {
        p.page_url = "https://github.com/dev-" + slug + "/" + slug + "/blob/main/release/" + slug + ".apk";
        p.download_url = "https://raw.githubusercontent.com/dev-" + slug + "/" + slug + "/main/release/" + slug + ".apk";
    } else {
        p.page_url = "https://market-h.test/app/" + slug;
        p.download_url = "https://cdn.market-h.test/" + slug + ".apk";
        p.html = wrap(title, "<a class=\"download\" href=\"" + p.download_url + "\">Download</a>");
    }
    return p;
}

Bytes dex_payload(std::mt19937_64& rng) {
    Bytes b{'d', 'e', 'x', '\n', '0', '3', '5', '\0'};
    const auto n{std::uniform_int_distribution<std::size_t>{2048, 8192}(rng)};
    for (std::size_t i{0}; i < n; ++i) b.push_back(static_cast<std::uint8_t>(rng() % 64));
    return b;
}

std::string key_of(const std::string& url) { return market::resource_key(*market::parse_url(url)); }

std::string package_of(const std::string& market, std::size_t i) {
    std::string id{market};
    std::replace(id.begin(), id.end(), '-', '.');
    return "com.appgate." + id + ".app" + std::to_string(i);
}

Bytes read_file(const std::filesystem::path& p) {
    std::ifstream in{p, std::ios::binary};
    return Bytes{std::istreambuf_iterator<char>{in}, std::istreambuf_iterator<char>{}};
}

void write_file(const std::filesystem::path& p, ByteView bytes) {
    std::filesystem::create_directories(p.parent_path());
    std::ofstream out{p, std::ios::binary | std::ios::trunc};
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error{"cannot write " + p.string()};
}

}  // namespace

Corpus build_corpus(const CorpusOptions& options) {
    Corpus c;
    std::mt19937_64 rng{options.seed};
    std::uint64_t next_serial{0x01000001};
    const auto add = [&](FixtureApp app, const std::string& html) {
        if (!html.empty()) c.resources[key_of(app.page_url)] = to_bytes(html);
        c.resources[key_of(app.download_url)] = app.apk;
        c.apps.push_back(std::move(app));
    };

    const std::vector<std::string> markets{"urlsum-a", "urlsum-b", "urlsum-c", "script-d", "rewrite-e",
                                           "plain-f",  "plain-g",  "github",   "secure-h"};
    for (const auto& market : markets) {
        for (std::size_t i{0}; i < options.apps_per_market; ++i) {
            FixtureApp app;
            app.market_id = market;
            app.slug = "app" + std::to_string(i);
            app.package_name = package_of(market, i);
            app.version_name = "1." + std::to_string(i) + ".0";
            const bool reference{market == "urlsum-a" && i == 0};
            app.serial = SerialNumber::from_uint(reference ? kReferenceSerial : next_serial++);
            const auto key{SigningKey::generate(app.serial, app.package_name)};
            app.apk = build_apk({app.package_name, app.version_name, {{"classes.dex", dex_payload(rng)}}}, key);
            c.official.add(app.package_name, app.serial);
            app.expected_repack = registry::RepackVerdict::pass;

            const auto md5_hex{to_hex(md5(app.apk))};
            const bool checksummed{market.rfind("urlsum", 0) == 0 || market == "script-d"};
            const auto page{render(market, app.slug, app.package_name, md5_hex)};
            app.page_url = page.page_url;
            app.download_url = page.download_url;
            if (checksummed) {
                app.declared_md5 = md5_hex;
                app.expected_channel = Channel::checksum_verified;
            } else if (market == "rewrite-e") {
                app.expected_channel = Channel::https_rewritten;
            } else if (market == "github" || market == "secure-h") {
                app.expected_channel = Channel::https_direct;
            } else if (i % 3 == 0) {
                c.anchors.known_apps.insert(sha256(app.apk));
                app.expected_channel = Channel::known_app_match;
            } else if (i % 3 == 1) {
                c.anchors.developer_serials.insert(app.serial);
                app.expected_channel = Channel::known_developer_match;
            } else {
                app.expected_channel = Channel::unverified_warning;
            }
            add(std::move(app), page.html);
        }
    }

    {
        // Official package re-signed by someone else and offered on a checksum market.
        const auto& victim{c.apps.front()};
        FixtureApp app;
        app.market_id = "urlsum-c";
        app.slug = "repack";
        app.package_name = victim.package_name;
        app.version_name = "2.0-mod";
        app.serial = SerialNumber::from_uint(next_serial++);
        const auto key{SigningKey::generate(app.serial, "repackager")};
        app.apk = build_apk({app.package_name, app.version_name, {{"classes.dex", dex_payload(rng)}}}, key);
        const auto md5_hex{to_hex(md5(app.apk))};
        const auto page{render(app.market_id, app.slug, app.package_name, md5_hex)};
        app.page_url = page.page_url;
        app.download_url = page.download_url;
        app.declared_md5 = md5_hex;
        app.expected_channel = Channel::checksum_verified;
        app.expected_repack = registry::RepackVerdict::fail;
        add(std::move(app), page.html);
    }
    {
        // Page declares one digest, the wire delivers modified bytes.
        FixtureApp app;
        app.market_id = "urlsum-a";
        app.slug = "mitm";
        app.package_name = "com.appgate.mitm.victim";
        app.version_name = "1.0";
        app.serial = SerialNumber::from_uint(next_serial++);
        const auto key{SigningKey::generate(app.serial, app.package_name)};
        app.apk = build_apk({app.package_name, app.version_name, {{"classes.dex", dex_payload(rng)}}}, key);
        app.apk[app.apk.size() / 2] ^= 0x5a;
        const auto page{render(app.market_id, app.slug, app.package_name, std::string{kMitmDeclaredMd5})};
        app.page_url = page.page_url;
        app.download_url = page.download_url;
        app.declared_md5 = std::string{kMitmDeclaredMd5};
        app.expected_channel = Channel::rejected;
        app.tampered = true;
        add(std::move(app), page.html);
    }
    return c;
}

std::shared_ptr<market::MapFetcher> Corpus::fetcher() const {
    auto f{std::make_shared<market::MapFetcher>()};
    for (const auto& [key, body] : resources) f->put("http://" + key, body);
    return f;
}

const FixtureApp& Corpus::get(std::string_view market_id, std::string_view slug) const {
    for (const auto& a : apps) {
        if (a.market_id == market_id && a.slug == slug) return a;
    }
    throw std::out_of_range{"no fixture " + std::string{market_id} + "/" + std::string{slug}};
}

std::vector<const FixtureApp*> Corpus::admissible() const {
    std::vector<const FixtureApp*> out;
    for (const auto& a : apps) {
        if (a.expected_channel != Channel::rejected) out.push_back(&a);
    }
    return out;
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_file(dir / "markets.json", to_bytes(fixture_markets_json()));
    std::string known, devs;
    for (const auto& h : corpus.anchors.known_apps) known += to_hex(h) + "\n";
    for (const auto& s : corpus.anchors.developer_serials) devs += s.hex() + "\n";
    write_file(dir / "known_apps.txt", to_bytes(known));
    write_file(dir / "developer_serials.txt", to_bytes(devs));
    corpus.official.save(dir / "serialdb.tsv");
    for (const auto& a : corpus.apps) {
        const auto app_dir{dir / a.market_id / a.slug};
        const auto page_key{key_of(a.page_url)};
        if (const auto it{corpus.resources.find(page_key)}; it != corpus.resources.end() && page_key != key_of(a.download_url)) {
            write_file(app_dir / "page.html", it->second);
        }
        write_file(app_dir / "app.apk", a.apk);
        json meta{{"marketId", a.market_id},
                  {"pageUrl", a.page_url},
                  {"downloadUrl", a.download_url},
                  {"packageName", a.package_name},
                  {"versionName", a.version_name},
                  {"certSerial", a.serial.hex()},
                  {"expectedChannel", market::to_string(a.expected_channel)},
                  {"expectedRepack", registry::to_string(a.expected_repack)},
                  {"tampered", a.tampered}};
        meta["declaredMd5"] = a.declared_md5 ? json(*a.declared_md5) : json(nullptr);
        write_file(app_dir / "meta.json", to_bytes(meta.dump(2) + "\n"));
    }
}

std::map<std::string, Bytes> load_corpus_resources(const std::filesystem::path& dir) {
    std::map<std::string, Bytes> out;
    for (const auto& entry : std::filesystem::recursive_directory_iterator{dir}) {
        if (entry.path().filename() != "meta.json") continue;
        const auto meta = json::parse(to_string(read_file(entry.path())));
        const auto app_dir{entry.path().parent_path()};
        if (std::filesystem::exists(app_dir / "page.html")) {
            out[key_of(meta.at("pageUrl").get<std::string>())] = read_file(app_dir / "page.html");
        }
        out[key_of(meta.at("downloadUrl").get<std::string>())] = read_file(app_dir / "app.apk");
    }
    return out;
}

}  // namespace appgate::fixtures
