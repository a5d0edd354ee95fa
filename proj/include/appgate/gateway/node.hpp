// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include <appgate/apk/apk.hpp>
#include <appgate/apk/serial_db.hpp>
#include <appgate/castore/gateway_select.hpp>
#include <appgate/castore/network.hpp>
#include <appgate/castore/refresh.hpp>
#include <appgate/castore/sync.hpp>
#include <appgate/gateway/config.hpp>
#include <appgate/gateway/fees.hpp>
#include <appgate/gateway/timing.hpp>
#include <appgate/ledger/ledger.hpp>
#include <appgate/market/fetcher.hpp>
#include <appgate/market/pattern.hpp>
#include <appgate/market/verify.hpp>
#include <appgate/registry/client.hpp>
#include <appgate/registry/registry.hpp>

namespace appgate::gateway {

inline constexpr std::size_t kMaxPackageName{128};
inline constexpr std::size_t kMaxVersionName{64};
inline constexpr std::size_t kMaxSerialBytes{20};
//! Appended to originUrl when the app was admitted with a warning.
inline constexpr std::string_view kWarningSuffix{"#appgate-warning=unverified"};
//! Castore node holding the server's own copies.
inline constexpr std::string_view kServerStore{"server"};

struct UploadRequest {
    std::string page_url;
    std::optional<ledger::Hash32> fee_tx;
};

struct UploadResult {
    std::string package_name;
    std::string version_name;
    castore::ContentId content_id;
    market::SecurityVerdict verdict;
    registry::RepackVerdict repack_verdict{registry::RepackVerdict::unchecked};
    std::string repack_detail;
    ledger::Hash32 tx_id{};
    std::string origin_url;
    std::string market_id;
    PhaseTimes timing;
};

enum class UploadErrc { unknown_market, retrieval_failed, malformed_apk, security_rejected, duplicate, fee_rejected, chain_rejected };

std::string_view to_string(UploadErrc) noexcept;

class UploadError : public std::runtime_error {
  public:
    UploadError(UploadErrc code, const std::string& detail);
    [[nodiscard]] UploadErrc code() const noexcept { return code_; }

    std::optional<market::SecurityVerdict> verdict;
    std::optional<FeeRejection> fee;

  private:
    UploadErrc code_;
};

class NotOnChain : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct FeeEstimate {
    std::uint64_t gas{0};
    ledger::Wei gas_price{0};
    ledger::Wei fee{0};
};

struct DownloadResult {
    registry::StoredApp app;
    Bytes bytes;
    castore::GatewayInfo served_by;
};

//! The orchestrating server: market retrieval, verification, storage and the registry.
class GatewayNode {
  public:
    explicit GatewayNode(NodeConfig config, std::shared_ptr<market::Fetcher> fetcher = nullptr);
    ~GatewayNode();

    GatewayNode(const GatewayNode&) = delete;
    GatewayNode& operator=(const GatewayNode&) = delete;

    //! Throws UploadError. A rejected upload leaves chain, store, SerialDb and fee tickets untouched.
    UploadResult upload(const UploadRequest& req);
    //! Gas for a maximum-size record from this market. Throws UploadError{unknown_market}.
    [[nodiscard]] FeeEstimate estimate_fee(const std::string& page_url) const;

    //! Zero-gas retrieval through the lowest-RTT reachable gateway, falling back to pinners.
    //! Throws NotOnChain or castore::CastoreError.
    DownloadResult download(const std::string& package_name, const std::string& version);

    [[nodiscard]] std::vector<registry::StoredApp> list_apps(std::size_t offset = 0, std::size_t limit = SIZE_MAX) const;
    [[nodiscard]] std::optional<registry::StoredApp> find_app(const std::string& package_name, const std::string& version) const;

    //! Probes gateways with the configured probe and returns them ranked (unreachable last, rtt 0).
    std::vector<castore::GatewayInfo> gateways();
    void set_probe(castore::RttProbe probe);

    //! Pins every on-chain content id at the configured pinners.
    std::vector<castore::SyncReport> sync();
    std::vector<castore::RefreshFailure> refresh_now();
    //! Advances the store clock: due refresh cycles, then gc on gateways.
    void tick(castore::Seconds now);

    ledger::Receipt whitelist(const ledger::Address& member, bool add);
    //! Returns the number of new (package, serial) pairs.
    std::size_t import_serials(const apk::SerialDb& db);
    [[nodiscard]] apk::SerialDb serial_db() const;

    [[nodiscard]] const NodeConfig& config() const noexcept { return config_; }
    [[nodiscard]] ledger::Ledger& chain() noexcept { return *chain_; }
    [[nodiscard]] const ledger::Ledger& chain() const noexcept { return *chain_; }
    [[nodiscard]] registry::AppRegistry& registry() noexcept { return registry_; }
    [[nodiscard]] registry::RegistryClient& client() noexcept { return client_; }
    [[nodiscard]] castore::Network& store() noexcept { return store_; }
    [[nodiscard]] castore::SimClock& clock() noexcept { return clock_; }
    [[nodiscard]] FeeLedger& fees() noexcept { return *fees_; }
    [[nodiscard]] const market::PatternRegistry& markets() const noexcept { return markets_; }
    //! Setup only: not synchronized with uploads in flight.
    void set_markets(market::PatternRegistry markets) { markets_ = std::move(markets); }
    [[nodiscard]] market::TrustAnchors& anchors() noexcept { return anchors_; }
    [[nodiscard]] const ledger::Address& server_account() const noexcept { return server_; }

  private:
    struct Retrieved;
    Retrieved retrieve(const market::MarketPattern& pattern, const std::string& page_url, LapTimer& timer);
    std::shared_ptr<std::mutex> identity_lock(const std::string& package_name, const std::string& version);

    NodeConfig config_;
    std::shared_ptr<market::Fetcher> fetcher_;
    ledger::Address server_;
    std::unique_ptr<ledger::Ledger> chain_;
    registry::AppRegistry registry_;
    registry::RegistryClient client_;
    castore::SimClock clock_;
    castore::Network store_;
    std::unique_ptr<castore::RefreshDaemon> refresher_;
    market::PatternRegistry markets_;
    market::TrustAnchors anchors_;
    std::unique_ptr<FeeLedger> fees_;

    mutable std::shared_mutex serial_mu_;
    apk::SerialDb serials_;
    std::filesystem::path serial_path_;

    std::mutex probe_mu_;
    castore::RttProbe probe_;

    std::mutex identity_mu_;
    std::map<std::string, std::weak_ptr<std::mutex>> identity_locks_;
};

}  // namespace appgate::gateway
