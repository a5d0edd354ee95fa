// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/fixtures/bench.hpp>
#include <appgate/fixtures/market_corpus.hpp>
#include <appgate/gateway/http_api.hpp>
#include <appgate/gateway/node.hpp>

#include <gtest/gtest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include <thread>

using namespace appgate;
using namespace appgate::gateway;
using nlohmann::json;

namespace {

const fixtures::Corpus& corpus() {
    static const auto c{fixtures::build_corpus()};
    return c;
}

const ledger::Address kDonor{ledger::Address::derive("donor")};

NodeConfig fee_config() {
    NodeConfig c;
    c.fees_enabled = true;
    c.accounts.push_back({"donor", 1'000'000'000'000'000'000});
    return c;
}

UploadErrc upload_error(GatewayNode& node, const UploadRequest& req, UploadError* out = nullptr) {
    try {
        node.upload(req);
    } catch (const UploadError& e) {
        if (out) *out = e;
        return e.code();
    }
    ADD_FAILURE() << "upload of " << req.page_url << " succeeded";
    return UploadErrc::chain_rejected;
}

std::filesystem::path temp_dir(const std::string& name) {
    auto p{std::filesystem::temp_directory_path() / ("appgate-gateway-" + name + std::to_string(::getpid()))};
    std::filesystem::remove_all(p);
    return p;
}

}  // namespace

TEST(Config, ParsesAndResolvesPaths) {
    const auto c{NodeConfig::parse(R"({
        "accounts": {"owner": {"label": "o", "balance": 5}, "extra": [{"label": "d", "balance": 7}]},
        "gasPrice": 2000000000, "fees": {"enabled": true},
        "markets": "markets.json", "dataDir": "/var/lib/appgate",
        "gateways": [{"name": "a", "rtt": 0.5}, {"name": "b"}],
        "ttlSeconds": 600, "refreshSeconds": 120,
        "listen": {"host": "0.0.0.0", "port": 9000}, "adminToken": "t",
        "hostAliases": {"market-a.test": "127.0.0.1:9999"}})",
                                   "/etc/appgate")};
    EXPECT_EQ(c.owner.label, "o");
    EXPECT_EQ(c.owner.balance, 5u);
    ASSERT_EQ(c.accounts.size(), 1u);
    EXPECT_EQ(c.gas_price, 2'000'000'000u);
    EXPECT_TRUE(c.fees_enabled);
    EXPECT_EQ(c.market_registry, "/etc/appgate/markets.json");
    EXPECT_EQ(c.data_dir, "/var/lib/appgate");
    ASSERT_EQ(c.gateways.size(), 2u);
    EXPECT_FALSE(c.gateways[1].rtt);
    EXPECT_EQ(c.ttl, castore::Seconds{600});
    EXPECT_EQ(c.port, 9000);
    EXPECT_EQ(c.host_aliases.at("market-a.test"), "127.0.0.1:9999");
    EXPECT_THROW(NodeConfig::parse("{\"gateways\": 3}"), std::exception);
}

TEST(Timing, PhasesAndReport) {
    LapTimer t;
    t.lap(Phase::retrieve);
    t.lap(Phase::checksum);
    const auto p{t.finish()};
    EXPECT_NEAR(p.phase_sum(), p.total, 1e-3);
    TimingReport r{{p, p}};
    EXPECT_NE(r.table().find("storeUpload"), std::string::npos);
    EXPECT_LE(r.worst_sum_error(), 0.05);
}

TEST(Upload, EveryAdmissibleFixtureGetsItsVerdict) {
    auto node{fixtures::corpus_node(corpus(), {})};
    for (const auto* a : corpus().admissible()) {
        SCOPED_TRACE(a->market_id + "/" + a->slug);
        const auto r{node->upload({a->page_url, std::nullopt})};
        EXPECT_EQ(r.verdict.channel, a->expected_channel) << r.verdict.detail;
        EXPECT_EQ(r.repack_verdict, a->expected_repack) << r.repack_detail;
        EXPECT_EQ(r.package_name, a->package_name);
        EXPECT_EQ(r.content_id, castore::ContentId::of(a->apk));
        EXPECT_EQ(r.market_id, a->market_id);
        const bool warned{r.origin_url.ends_with(kWarningSuffix)};
        EXPECT_EQ(warned, a->expected_channel == market::Channel::unverified_warning);
        const auto stored{node->find_app(a->package_name, a->version_name)};
        ASSERT_TRUE(stored);
        EXPECT_EQ(stored->record.origin_url, r.origin_url);
        EXPECT_EQ(stored->tx_id, r.tx_id);
    }
    EXPECT_EQ(node->list_apps().size(), corpus().admissible().size());
    EXPECT_EQ(node->list_apps(2, 3).size(), 3u);
}

TEST(Upload, RejectionsLeaveNoTrace) {
    auto node{fixtures::corpus_node(corpus(), {})};
    const auto before{node->chain().snapshot()};
    const auto head{node->chain().head()};
    const auto store_before{node->store().state(std::string{kServerStore}).pinned};
    UploadError err{UploadErrc::duplicate, ""};
    EXPECT_EQ(upload_error(*node, {corpus().get("urlsum-a", "mitm").page_url, std::nullopt}, &err),
              UploadErrc::security_rejected);
    ASSERT_TRUE(err.verdict);
    EXPECT_EQ(err.verdict->channel, market::Channel::rejected);
    EXPECT_NE(err.verdict->detail.find(std::string{fixtures::kMitmDeclaredMd5}), std::string::npos);
    EXPECT_EQ(upload_error(*node, {"http://nowhere.test/app/1", std::nullopt}), UploadErrc::unknown_market);
    EXPECT_EQ(upload_error(*node, {"http://market-a.test/app/missing", std::nullopt}), UploadErrc::retrieval_failed);
    EXPECT_EQ(node->chain().snapshot(), before);
    EXPECT_EQ(node->chain().head(), head);
    EXPECT_EQ(node->store().state(std::string{kServerStore}).pinned, store_before);
}

TEST(Upload, DuplicateIsRefusedOffChain) {
    auto node{fixtures::corpus_node(corpus(), {})};
    const auto& a{*corpus().admissible().front()};
    node->upload({a.page_url, std::nullopt});
    const auto head{node->chain().head()};
    EXPECT_EQ(upload_error(*node, {a.page_url, std::nullopt}), UploadErrc::duplicate);
    EXPECT_EQ(node->chain().head(), head);
}

TEST(Upload, ConcurrentDuplicatesYieldOneLog) {
    auto node{fixtures::corpus_node(corpus(), {})};
    const auto& a{*corpus().admissible().front()};
    std::atomic<int> ok{0}, dup{0};
    {
        std::vector<std::jthread> threads;
        for (int i{0}; i < 20; ++i) {
            threads.emplace_back([&] {
                try {
                    node->upload({a.page_url, std::nullopt});
                    ++ok;
                } catch (const UploadError& e) {
                    if (e.code() == UploadErrc::duplicate) ++dup;
                }
            });
        }
    }
    EXPECT_EQ(ok, 1);
    EXPECT_EQ(dup, 19);
    EXPECT_EQ(registry::count_app_logs(node->chain(), node->registry().address(), a.package_name, a.version_name), 1u);
}

TEST(Upload, NonWhitelistedServerIsRolledBack) {
    NodeConfig c;
    c.whitelist_server = false;
    auto node{fixtures::corpus_node(corpus(), c)};
    const auto& a{*corpus().admissible().front()};
    EXPECT_EQ(upload_error(*node, {a.page_url, std::nullopt}), UploadErrc::chain_rejected);
    EXPECT_FALSE(node->store().holds(std::string{kServerStore}, castore::ContentId::of(a.apk)));
    EXPECT_FALSE(node->find_app(a.package_name, a.version_name));
    node->whitelist(node->server_account(), true);
    EXPECT_NO_THROW(node->upload({a.page_url, std::nullopt}));
}

TEST(Fees, TicketsAreCheckedAndSingleUse) {
    auto node{fixtures::corpus_node(corpus(), fee_config())};
    const auto apps{corpus().admissible()};
    const auto fee{node->estimate_fee(apps[0]->page_url).fee};
    EXPECT_EQ(node->estimate_fee(apps[0]->page_url).gas_price, 1'000'000'000u);
    ASSERT_GT(fee, 0u);

    EXPECT_EQ(upload_error(*node, {apps[0]->page_url, std::nullopt}), UploadErrc::fee_rejected);

    ledger::NoOpExecutor noop;
    const auto elsewhere{node->chain().submit_next(kDonor, ledger::Address::derive("someone"), fee, {}, noop)};
    UploadError err{UploadErrc::duplicate, ""};
    EXPECT_EQ(upload_error(*node, {apps[0]->page_url, elsewhere.tx_id}, &err), UploadErrc::fee_rejected);
    EXPECT_EQ(err.fee, FeeRejection::wrong_destination);

    const auto small{node->client().donate_gas_fee(kDonor, fee - 1)};
    EXPECT_EQ(upload_error(*node, {apps[0]->page_url, small.tx_id}, &err), UploadErrc::fee_rejected);
    EXPECT_EQ(err.fee, FeeRejection::insufficient_value);

    const auto good{node->client().donate_gas_fee(kDonor, fee)};
    EXPECT_NO_THROW(node->upload({apps[0]->page_url, good.tx_id}));
    EXPECT_EQ(upload_error(*node, {apps[1]->page_url, good.tx_id}, &err), UploadErrc::fee_rejected);
    EXPECT_EQ(err.fee, FeeRejection::already_used);
    EXPECT_EQ(node->fees().consumed_count(), 1u);
}

TEST(Fees, RejectedUploadReleasesTicket) {
    auto node{fixtures::corpus_node(corpus(), fee_config())};
    const auto& a{*corpus().admissible().front()};
    const auto tx{node->client().donate_gas_fee(kDonor, node->estimate_fee(a.page_url).fee)};
    node->upload({a.page_url, tx.tx_id});
    const auto& b{*corpus().admissible()[1]};
    const auto tx2{node->client().donate_gas_fee(kDonor, node->estimate_fee(b.page_url).fee)};
    EXPECT_EQ(upload_error(*node, {a.page_url, tx2.tx_id}), UploadErrc::duplicate);
    EXPECT_FALSE(node->fees().consumed(tx2.tx_id));
    EXPECT_NO_THROW(node->upload({b.page_url, tx2.tx_id}));
}

TEST(Fees, ConcurrentVerificationConsumesOnce) {
    auto node{fixtures::corpus_node(corpus(), fee_config())};
    const auto tx{node->client().donate_gas_fee(kDonor, 1'000'000)};
    std::atomic<int> ok{0}, replay{0};
    {
        std::vector<std::jthread> threads;
        for (int i{0}; i < 50; ++i) {
            threads.emplace_back([&] {
                try {
                    node->fees().verify(tx.tx_id, 1'000'000);
                    ++ok;
                } catch (const FeeRejected& e) {
                    if (e.reason() == FeeRejection::already_used) ++replay;
                }
            });
        }
    }
    EXPECT_EQ(ok, 1);
    EXPECT_EQ(replay, 49);
}

TEST(Download, IsGasFreeAndVerified) {
    auto node{fixtures::corpus_node(corpus(), {})};
    const auto& a{*corpus().admissible().front()};
    node->upload({a.page_url, std::nullopt});
    const auto before{node->chain().snapshot()};
    const auto head{node->chain().head()};
    for (int i{0}; i < 10; ++i) {
        const auto got{node->download(a.package_name, a.version_name)};
        EXPECT_EQ(got.bytes, a.apk);
        EXPECT_EQ(got.served_by.name, "gw-1");
    }
    EXPECT_EQ(node->chain().snapshot(), before);
    EXPECT_EQ(node->chain().head(), head);
    EXPECT_THROW(node->download("no.such", "1"), NotOnChain);
}

TEST(Download, FallsBackToPinnersAfterSync) {
    auto node{fixtures::corpus_node(corpus(), {})};
    const auto& a{*corpus().admissible().front()};
    node->upload({a.page_url, std::nullopt});
    const auto reports{node->sync()};
    ASSERT_EQ(reports.size(), 1u);
    EXPECT_EQ(reports[0].newly_pinned.size(), 1u);
    node->store().set_online(std::string{kServerStore}, false);
    for (const auto& g : node->config().gateways) node->store().set_online(g.name, false);
    const auto got{node->download(a.package_name, a.version_name)};
    EXPECT_EQ(got.served_by.name, "pinner-1");
    EXPECT_EQ(got.bytes, a.apk);
}

TEST(Download, GatewayCachesOutliveOriginWithRefresh) {
    NodeConfig c;
    c.pinners.clear();
    auto node{fixtures::corpus_node(corpus(), c)};
    const auto& a{*corpus().admissible().front()};
    node->upload({a.page_url, std::nullopt});
    node->tick(castore::Seconds{0});
    node->store().set_online(std::string{kServerStore}, false);
    for (int m{10}; m <= 300; m += 10) node->tick(castore::Seconds{m * 60});
    EXPECT_EQ(node->download(a.package_name, a.version_name).bytes, a.apk);
}

TEST(Gateways, RankedByProbe) {
    auto node{fixtures::corpus_node(corpus(), {})};
    auto ranked{node->gateways()};
    ASSERT_EQ(ranked.size(), 2u);
    EXPECT_EQ(ranked[0].name, "gw-1");
    node->set_probe(castore::table_probe({{"gw-2", 0.01}}));
    ranked = node->gateways();
    EXPECT_EQ(ranked[0].name, "gw-2");
    EXPECT_FALSE(ranked[1].reachable);
}

TEST(Persistence, ChainStoreAndSerialsSurviveRestart) {
    const auto dir{temp_dir("persist")};
    NodeConfig c;
    c.data_dir = dir;
    const auto& a{*corpus().admissible().front()};
    {
        auto node{fixtures::corpus_node(corpus(), c)};
        node->upload({a.page_url, std::nullopt});
    }
    GatewayNode again{c, corpus().fetcher()};
    ASSERT_TRUE(again.find_app(a.package_name, a.version_name));
    EXPECT_EQ(again.download(a.package_name, a.version_name).bytes, a.apk);
    EXPECT_EQ(again.serial_db(), corpus().official);
    std::filesystem::remove_all(dir);
}

class HttpApi : public ::testing::Test {
  protected:
    void SetUp() override {
        NodeConfig c;
        c.admin_token = "secret";
        node = fixtures::corpus_node(corpus(), c);
        mount_api(server, *node);
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::jthread{[this] { server.listen_after_bind(); }};
        server.wait_until_ready();
        client = std::make_unique<httplib::Client>("127.0.0.1", port);
    }
    void TearDown() override { server.stop(); }

    httplib::Result post(const std::string& path, const json& body, const httplib::Headers& headers = {}) {
        return client->Post(path, headers, body.dump(), "application/json");
    }

    std::unique_ptr<GatewayNode> node;
    httplib::Server server;
    int port{0};
    std::jthread thread;
    std::unique_ptr<httplib::Client> client;
};

TEST_F(HttpApi, UploadListDownload) {
    const auto& a{*corpus().admissible().front()};
    auto res{post("/api/upload", {{"pageUrl", a.page_url}})};
    ASSERT_EQ(res->status, 200) << res->body;
    const auto up = json::parse(res->body);
    EXPECT_EQ(up["packageName"], a.package_name);
    EXPECT_EQ(up["verdict"]["channel"], market::to_string(a.expected_channel));

    res = client->Get("/api/apps");
    ASSERT_EQ(res->status, 200);
    EXPECT_EQ(json::parse(res->body).size(), 1u);

    res = client->Get("/api/apps/" + a.package_name + "/" + a.version_name);
    ASSERT_EQ(res->status, 200);
    EXPECT_EQ(json::parse(res->body)["contentId"], castore::ContentId::of(a.apk).str());

    res = client->Get("/api/download/" + a.package_name + "/" + a.version_name);
    ASSERT_EQ(res->status, 200);
    EXPECT_EQ(Bytes(res->body.begin(), res->body.end()), a.apk);
    EXPECT_EQ(res->get_header_value("X-Served-By"), "gw-1");

    res = client->Get("/ipfs/" + castore::ContentId::of(a.apk).str());
    ASSERT_EQ(res->status, 200);
    EXPECT_EQ(res->body.size(), a.apk.size());

    EXPECT_EQ(post("/api/upload", {{"pageUrl", a.page_url}})->status, 409);
    EXPECT_EQ(client->Get("/api/apps/none/1")->status, 404);
    EXPECT_EQ(client->Get("/api/download/none/1")->status, 404);
}

TEST_F(HttpApi, ErrorStatuses) {
    EXPECT_EQ(post("/api/upload", {{"pageUrl", "http://nowhere.test/x"}})->status, 404);
    EXPECT_EQ(post("/api/upload", {{"nope", 1}})->status, 400);
    const auto res{post("/api/upload", {{"pageUrl", corpus().get("urlsum-a", "mitm").page_url}})};
    EXPECT_EQ(res->status, 422);
    EXPECT_EQ(json::parse(res->body)["verdict"]["channel"], "rejected");
    EXPECT_EQ(client->Get("/api/apps?limit=x")->status, 400);
}

TEST_F(HttpApi, EstimateAndGateways) {
    auto res{client->Get("/api/estimate?pageUrl=" + httplib::detail::encode_query_param(corpus().apps[0].page_url))};
    ASSERT_EQ(res->status, 200) << res->body;
    const auto e = json::parse(res->body);
    EXPECT_EQ(e["fee"].get<std::uint64_t>(), e["gas"].get<std::uint64_t>() * e["gasPrice"].get<std::uint64_t>());
    res = client->Get("/api/gateways");
    ASSERT_EQ(res->status, 200);
    EXPECT_EQ(json::parse(res->body)[0]["name"], "gw-1");
}

TEST_F(HttpApi, AdminRoutesNeedToken) {
    const json body{{"address", ledger::Address::derive("new server").hex()}, {"action", "add"}};
    EXPECT_EQ(post("/api/admin/whitelist", body)->status, 403);
    EXPECT_EQ(post("/api/admin/whitelist", body, {{"X-Admin-Token", "wrong"}})->status, 403);
    EXPECT_EQ(post("/api/admin/whitelist", body, {{"X-Admin-Token", "secret"}})->status, 200);
    EXPECT_TRUE(node->registry().is_whitelisted(node->chain(), ledger::Address::derive("new server")));
    const json entries{{"entries", {{{"package", "org.new"}, {"serial", "0x1234"}}}}};
    const auto res{post("/api/admin/serialdb", entries, {{"X-Admin-Token", "secret"}})};
    ASSERT_EQ(res->status, 200);
    EXPECT_EQ(json::parse(res->body)["added"], 1);
    EXPECT_TRUE(node->serial_db().contains("org.new"));
}
