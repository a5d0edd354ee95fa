// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/gateway/node.hpp>
#include <appgate/market/extract.hpp>
#include <appgate/market/url.hpp>

namespace appgate::gateway {

std::string_view to_string(UploadErrc code) noexcept {
    switch (code) {
        case UploadErrc::unknown_market: return "UnknownMarket";
        case UploadErrc::retrieval_failed: return "RetrievalFailed";
        case UploadErrc::malformed_apk: return "MalformedApk";
        case UploadErrc::security_rejected: return "SecurityRejected";
        case UploadErrc::duplicate: return "Duplicate";
        case UploadErrc::fee_rejected: return "FeeRejected";
        case UploadErrc::chain_rejected: return "ChainRejected";
    }
    return "Unknown";
}

UploadError::UploadError(UploadErrc code, const std::string& detail)
    : std::runtime_error{std::string{to_string(code)} + ": " + detail}, code_{code} {}

namespace {

ledger::Genesis genesis_of(const NodeConfig& c) {
    ledger::Genesis g;
    g.gas_price = c.gas_price;
    g.balances.emplace_back(c.owner.address(), c.owner.balance);
    g.balances.emplace_back(c.server.address(), c.server.balance);
    for (const auto& a : c.accounts) g.balances.emplace_back(a.address(), a.balance);
    return g;
}

std::unique_ptr<ledger::Ledger> open_chain(const NodeConfig& c) {
    if (c.data_dir.empty()) return std::make_unique<ledger::Ledger>(genesis_of(c));
    std::filesystem::create_directories(c.data_dir);
    return std::make_unique<ledger::Ledger>(genesis_of(c), c.data_dir / "chain.log");
}

castore::RttProbe config_probe(const NodeConfig& c) {
    std::map<std::string, double> rtts;
    for (const auto& g : c.gateways) {
        if (g.rtt) rtts.emplace(g.name, *g.rtt);
    }
    return castore::table_probe(std::move(rtts));
}

UploadError security_error(market::SecurityVerdict verdict) {
    UploadError e{UploadErrc::security_rejected, verdict.detail};
    e.verdict = std::move(verdict);
    return e;
}

}  // namespace

struct GatewayNode::Retrieved {
    std::string page_html;
    std::string download_url;
    Bytes bytes;
    bool secure{false};
};

GatewayNode::GatewayNode(NodeConfig config, std::shared_ptr<market::Fetcher> fetcher)
    : config_{std::move(config)},
      fetcher_{std::move(fetcher)},
      server_{config_.server.address()},
      chain_{open_chain(config_)},
      registry_{config_.registry_address(), config_.owner.address()},
      client_{*chain_, registry_},
      store_{clock_},
      probe_{config_probe(config_)} {
    if (!fetcher_) fetcher_ = std::make_shared<market::HttpFetcher>(config_.host_aliases, config_.per_host_connections);

    const std::string server_store{kServerStore};
    store_.add_node(server_store, castore::NodeKind::origin, config_.ttl);
    if (!config_.data_dir.empty()) store_.attach_directory(server_store, config_.data_dir / "blobs");
    std::vector<std::string> gateway_names;
    for (const auto& g : config_.gateways) {
        store_.add_node(g.name, castore::NodeKind::gateway, config_.ttl);
        gateway_names.push_back(g.name);
    }
    for (const auto& p : config_.pinners) {
        store_.add_node(p, castore::NodeKind::pinner, config_.ttl);
        if (!config_.data_dir.empty()) store_.attach_directory(p, config_.data_dir / "pins" / p);
    }
    refresher_ = std::make_unique<castore::RefreshDaemon>(store_, gateway_names, config_.refresh_period);

    if (!config_.market_registry.empty()) markets_ = market::PatternRegistry::load(config_.market_registry);
    if (!config_.known_apps.empty()) anchors_.known_apps = market::TrustAnchors::load_known_apps(config_.known_apps);
    if (!config_.developer_serials.empty()) {
        anchors_.developer_serials = market::TrustAnchors::load_developer_serials(config_.developer_serials);
    }

    serial_path_ = !config_.serial_db.empty() ? config_.serial_db
                   : config_.data_dir.empty() ? std::filesystem::path{}
                                              : config_.data_dir / "serialdb.tsv";
    if (!serial_path_.empty()) serials_ = apk::SerialDb::load(serial_path_);

    fees_ = std::make_unique<FeeLedger>(*chain_, registry_.address(),
                                        config_.data_dir.empty() ? std::filesystem::path{}
                                                                 : config_.data_dir / "fee_tickets.log");

    if (config_.whitelist_server && !registry_.is_whitelisted(*chain_, server_)) {
        client_.whitelist_add(config_.owner.address(), server_);
    }
    std::vector<castore::ContentId> cids;
    for (const auto& app : registry::list_apps(*chain_, registry_.address())) cids.push_back(app.record.content_id);
    refresher_->set_content(std::move(cids));
}

GatewayNode::~GatewayNode() = default;

GatewayNode::Retrieved GatewayNode::retrieve(const market::MarketPattern& pattern, const std::string& page_url,
                                             LapTimer& timer) {
    Retrieved r;
    try {
        if (!std::holds_alternative<market::Direct>(pattern.download_rule)) {
            r.page_html = appgate::to_string(fetcher_->get(page_url));
        }
        r.download_url = market::resolve_download_url(pattern, r.page_html, page_url);
        r.bytes = fetcher_->get(r.download_url);
    } catch (const market::MarketError& e) {
        throw UploadError{UploadErrc::retrieval_failed, e.what()};
    }
    if (r.bytes.empty()) throw UploadError{UploadErrc::retrieval_failed, r.download_url + " returned no bytes"};
    const auto url{market::parse_url(r.download_url)};
    r.secure = pattern.secure_after_rule() && url && url->secure();
    timer.lap(Phase::retrieve);
    return r;
}

std::shared_ptr<std::mutex> GatewayNode::identity_lock(const std::string& package_name, const std::string& version) {
    std::lock_guard lock{identity_mu_};
    if (identity_locks_.size() > 4096) std::erase_if(identity_locks_, [](const auto& kv) { return kv.second.expired(); });
    auto& slot{identity_locks_[package_name + '\0' + version]};
    auto m{slot.lock()};
    if (!m) {
        m = std::make_shared<std::mutex>();
        slot = m;
    }
    return m;
}

UploadResult GatewayNode::upload(const UploadRequest& req) {
    LapTimer timer;
    const auto* pattern{markets_.find(req.page_url)};
    if (pattern == nullptr) throw UploadError{UploadErrc::unknown_market, req.page_url};

    const auto fetched{retrieve(*pattern, req.page_url, timer)};

    market::RetrievedApp app{fetched.bytes, req.page_url, fetched.download_url, std::nullopt, fetched.secure,
                             pattern->rewrites()};
    try {
        app.declared_checksum = market::extract_checksum(*pattern, fetched.page_html, fetched.download_url);
    } catch (const market::MarketError& e) {
        throw security_error({market::Channel::rejected, e.what()});
    }
    std::optional<market::SecurityVerdict> verdict;
    if (app.declared_checksum) {
        verdict = market::verify_checksum(app);
        if (!verdict->admits()) throw security_error(*verdict);
    }
    timer.lap(Phase::checksum);

    apk::ApkSummary summary;
    try {
        summary = apk::parse_apk(app.bytes);
    } catch (const apk::ApkError& e) {
        throw UploadError{UploadErrc::malformed_apk, e.what()};
    }
    if (summary.package_name.size() > kMaxPackageName || summary.version_name.size() > kMaxVersionName ||
        summary.cert_serial.bytes().size() > kMaxSerialBytes) {
        throw UploadError{UploadErrc::malformed_apk, "package, version or serial exceeds its maximum length"};
    }
    timer.lap(Phase::repackaging);

    if (!verdict) verdict = market::assess(app, anchors_, summary.cert_serial);
    if (!verdict->admits()) throw security_error(*verdict);
    timer.lap(Phase::checksum);

    apk::RepackOutcome repack;
    {
        std::shared_lock lock{serial_mu_};
        repack = apk::repack_check(summary, serials_);
    }
    timer.lap(Phase::repackaging);

    registry::AppRecord record{summary.package_name,
                               summary.version_name,
                               summary.cert_serial,
                               req.page_url + (verdict->warning() ? std::string{kWarningSuffix} : std::string{}),
                               repack.verdict,
                               castore::ContentId::of(app.bytes)};

    const auto key_mu{identity_lock(summary.package_name, summary.version_name)};
    std::lock_guard identity{*key_mu};
    if (find_app(summary.package_name, summary.version_name)) {
        throw UploadError{UploadErrc::duplicate, summary.package_name + " " + summary.version_name + " is already stored"};
    }
    std::optional<ledger::Hash32> ticket;
    if (config_.fees_enabled) {
        try {
            if (!req.fee_tx) throw FeeRejected{FeeRejection::unknown_tx, "no fee transaction supplied"};
            fees_->reserve(*req.fee_tx, estimate_fee(req.page_url).fee);
            ticket = req.fee_tx;
        } catch (const FeeRejected& e) {
            UploadError err{UploadErrc::fee_rejected, e.what()};
            err.fee = e.reason();
            throw err;
        }
    }
    timer.lap(Phase::chain_submit);

    const std::string server_store{kServerStore};
    const bool already_held{store_.holds(server_store, record.content_id)};
    ledger::Receipt receipt;
    try {
        store_.add(server_store, app.bytes);
        timer.lap(Phase::store_upload);
        receipt = client_.store_app(server_, record);
    } catch (const std::exception& e) {
        if (!already_held) store_.remove(server_store, record.content_id);
        if (ticket) fees_->release(*ticket);
        throw UploadError{UploadErrc::chain_rejected, e.what()};
    }
    if (ticket) fees_->commit(*ticket);
    refresher_->add_content(record.content_id);
    timer.lap(Phase::chain_submit);

    UploadResult result;
    result.package_name = record.package_name;
    result.version_name = record.version;
    result.content_id = record.content_id;
    result.verdict = *verdict;
    result.repack_verdict = repack.verdict;
    result.repack_detail = repack.detail;
    result.tx_id = receipt.tx_id;
    result.origin_url = record.origin_url;
    result.market_id = pattern->market_id;
    result.timing = timer.finish();
    return result;
}

FeeEstimate GatewayNode::estimate_fee(const std::string& page_url) const {
    if (markets_.find(page_url) == nullptr) throw UploadError{UploadErrc::unknown_market, page_url};
    const Bytes max_serial(kMaxSerialBytes, 0xff);
    const registry::AppRecord placeholder{std::string(kMaxPackageName, 'x'),
                                          std::string(kMaxVersionName, 'x'),
                                          SerialNumber::from_bytes(max_serial),
                                          page_url + std::string{kWarningSuffix},
                                          registry::RepackVerdict::unchecked,
                                          castore::ContentId::of(Bytes{})};
    FeeEstimate e;
    e.gas = client_.store_app_estimate(placeholder);
    e.gas_price = chain_->gas_price();
    e.fee = e.gas * e.gas_price;
    return e;
}

std::vector<registry::StoredApp> GatewayNode::list_apps(std::size_t offset, std::size_t limit) const {
    auto all{registry::list_apps(*chain_, registry_.address())};
    if (offset >= all.size()) return {};
    const auto end{offset + std::min(limit, all.size() - offset)};
    return {std::make_move_iterator(all.begin() + static_cast<std::ptrdiff_t>(offset)),
            std::make_move_iterator(all.begin() + static_cast<std::ptrdiff_t>(end))};
}

std::optional<registry::StoredApp> GatewayNode::find_app(const std::string& package_name,
                                                         const std::string& version) const {
    return registry::find_app(*chain_, registry_.address(), package_name, version);
}

void GatewayNode::set_probe(castore::RttProbe probe) {
    std::lock_guard lock{probe_mu_};
    probe_ = std::move(probe);
}

std::vector<castore::GatewayInfo> GatewayNode::gateways() {
    std::vector<castore::GatewayInfo> all;
    for (const auto& g : config_.gateways) all.push_back({g.name, "sim://" + g.name, 0.0, false});
    castore::RttProbe probe;
    {
        std::lock_guard lock{probe_mu_};
        probe = probe_;
    }
    auto ranked{castore::rank_gateways(all, probe)};
    for (const auto& g : all) {
        if (!g.reachable) ranked.push_back(g);
    }
    return ranked;
}

DownloadResult GatewayNode::download(const std::string& package_name, const std::string& version) {
    auto app{find_app(package_name, version)};
    if (!app) throw NotOnChain{package_name + " " + version + " has no record on chain"};
    const auto& cid{app->record.content_id};

    std::vector<castore::GatewayInfo> candidates;
    for (auto& g : gateways()) {
        if (g.reachable) candidates.push_back(std::move(g));
    }
    for (const auto& p : config_.pinners) candidates.push_back({p, "sim://" + p, 0.0, true});

    std::optional<castore::CastoreError> last;
    for (const auto& gw : candidates) {
        try {
            auto bytes{store_.fetch(cid, gw.name)};
            if (!cid.certifies(bytes)) throw castore::CastoreError{castore::CastoreErrc::integrity_mismatch, gw.name};
            return {std::move(*app), std::move(bytes), gw};
        } catch (const castore::CastoreError& e) {
            if (!last || e.code() == castore::CastoreErrc::integrity_mismatch) last = e;
        }
    }
    if (last) throw *last;
    throw castore::CastoreError{castore::CastoreErrc::not_found, cid.str()};
}

std::vector<castore::SyncReport> GatewayNode::sync() {
    std::vector<castore::SyncReport> reports;
    for (const auto& p : config_.pinners) reports.push_back(castore::consortium_sync(store_, p, *chain_, registry_.address()));
    return reports;
}

std::vector<castore::RefreshFailure> GatewayNode::refresh_now() { return refresher_->run_cycle(); }

void GatewayNode::tick(castore::Seconds now) {
    clock_.set(now);
    refresher_->on_tick(now);
    for (const auto& g : config_.gateways) store_.gc(g.name);
    for (const auto& p : config_.pinners) store_.gc(p);
}

ledger::Receipt GatewayNode::whitelist(const ledger::Address& member, bool add) {
    return add ? client_.whitelist_add(config_.owner.address(), member)
               : client_.whitelist_remove(config_.owner.address(), member);
}

std::size_t GatewayNode::import_serials(const apk::SerialDb& db) {
    std::unique_lock lock{serial_mu_};
    std::size_t added{0};
    for (const auto& [pkg, serials] : db.entries()) {
        for (const auto& s : serials) {
            if (!serials_.add(pkg, s)) continue;
            ++added;
            if (!serial_path_.empty()) apk::SerialDb::append_line(serial_path_, pkg, s);
        }
    }
    return added;
}

apk::SerialDb GatewayNode::serial_db() const {
    std::shared_lock lock{serial_mu_};
    return serials_;
}

}  // namespace appgate::gateway
