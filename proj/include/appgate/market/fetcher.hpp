// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include <appgate/bytes.hpp>
#include <appgate/market/errors.hpp>
#include <appgate/market/url.hpp>

namespace httplib {
class Server;
}

namespace appgate::market {

class Fetcher {
  public:
    virtual ~Fetcher() = default;
    //! Throws MarketError{retrieval_failed}.
    virtual Bytes get(const std::string& url) = 0;
};

//! Resource key ignoring scheme: "host[:port]/path?query".
std::string resource_key(const Url& url);

class MapFetcher : public Fetcher {
  public:
    void put(const std::string& url, Bytes body);
    Bytes get(const std::string& url) override;
    [[nodiscard]] std::size_t requests() const noexcept { return requests_; }
    [[nodiscard]] const std::map<std::string, Bytes>& resources() const noexcept { return resources_; }

  private:
    mutable std::mutex mu_;
    std::map<std::string, Bytes> resources_;
    std::atomic<std::size_t> requests_{0};
};

//! Fetches over HTTP. Hosts listed in aliases are sent to the mapped "ip:port" with the original
//! Host header, which lets a loopback fixture server stand in for several markets.
class HttpFetcher : public Fetcher {
  public:
    explicit HttpFetcher(std::map<std::string, std::string> aliases = {}, std::size_t per_host_cap = 4,
                         std::chrono::milliseconds timeout = std::chrono::seconds{10});
    ~HttpFetcher() override;
    Bytes get(const std::string& url) override;

  private:
    class HostSlot;
    HostSlot& slot(const std::string& host);

    std::map<std::string, std::string> aliases_;
    std::size_t cap_;
    std::chrono::milliseconds timeout_;
    std::mutex mu_;
    std::map<std::string, std::unique_ptr<HostSlot>> slots_;
};

//! Serves a resource map keyed by resource_key, dispatching on the Host header.
void mount_fixture_routes(httplib::Server& server, std::map<std::string, Bytes> resources);

}  // namespace appgate::market
