// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/market/fetcher.hpp>

#include <httplib.h>

namespace appgate::market {

std::string resource_key(const Url& url) { return url.authority() + url.path; }

namespace {

Url parse_or_throw(const std::string& text) {
    const auto url{parse_url(text)};
    if (!url) throw MarketError{MarketErrc::retrieval_failed, "not an http(s) URL: " + text};
    return *url;
}

}  // namespace

void MapFetcher::put(const std::string& url, Bytes body) {
    const auto key{resource_key(parse_or_throw(url))};
    std::lock_guard lock{mu_};
    resources_[key] = std::move(body);
}

Bytes MapFetcher::get(const std::string& url) {
    ++requests_;
    const auto key{resource_key(parse_or_throw(url))};
    std::lock_guard lock{mu_};
    const auto it{resources_.find(key)};
    if (it == resources_.end()) throw MarketError{MarketErrc::retrieval_failed, "404 " + url};
    return it->second;
}

class HttpFetcher::HostSlot {
  public:
    explicit HostSlot(std::size_t cap) : free_{cap} {}

    void acquire() {
        std::unique_lock lock{mu_};
        cv_.wait(lock, [&] { return free_ > 0; });
        --free_;
    }

    void release() {
        {
            std::lock_guard lock{mu_};
            ++free_;
        }
        cv_.notify_one();
    }

  private:
    std::mutex mu_;
    std::condition_variable cv_;
    std::size_t free_;
};

HttpFetcher::HttpFetcher(std::map<std::string, std::string> aliases, std::size_t per_host_cap,
                         std::chrono::milliseconds timeout)
    : aliases_{std::move(aliases)}, cap_{per_host_cap == 0 ? 1 : per_host_cap}, timeout_{timeout} {}

HttpFetcher::~HttpFetcher() = default;

HttpFetcher::HostSlot& HttpFetcher::slot(const std::string& host) {
    std::lock_guard lock{mu_};
    auto& s{slots_[host]};
    if (!s) s = std::make_unique<HostSlot>(cap_);
    return *s;
}

Bytes HttpFetcher::get(const std::string& text) {
    const auto url{parse_or_throw(text)};
    std::string target{url.scheme + "://" + url.authority()};
    httplib::Headers headers;
    if (const auto alias{aliases_.find(url.host)}; alias != aliases_.end()) {
        target = "http://" + alias->second;
        headers.emplace("Host", url.authority());
    }
    auto& s{slot(url.authority())};
    s.acquire();
    struct Release {
        HostSlot& s;
        ~Release() { s.release(); }
    } release{s};

    httplib::Client cli{target};
    cli.set_connection_timeout(timeout_);
    cli.set_read_timeout(timeout_);
    cli.set_follow_location(false);
    const auto res{cli.Get(url.path, headers)};
    if (!res) throw MarketError{MarketErrc::retrieval_failed, text + ": " + httplib::to_string(res.error())};
    if (res->status != 200) {
        throw MarketError{MarketErrc::retrieval_failed, text + ": HTTP " + std::to_string(res->status)};
    }
    return Bytes{res->body.begin(), res->body.end()};
}

void mount_fixture_routes(httplib::Server& server, std::map<std::string, Bytes> resources) {
    server.Get(".*", [resources = std::move(resources)](const httplib::Request& req, httplib::Response& res) {
        std::string target{req.target};
        if (target.empty()) target = req.path;
        const auto it{resources.find(req.get_header_value("Host") + target)};
        if (it == resources.end()) {
            res.status = 404;
            return;
        }
        const bool page{target.find(".apk") == std::string::npos};
        res.set_content(std::string{it->second.begin(), it->second.end()},
                        page ? "text/html; charset=utf-8" : "application/vnd.android.package-archive");
    });
}

}  // namespace appgate::market
