// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/castore/gateway_select.hpp>
#include <appgate/castore/http_gateway.hpp>
#include <appgate/castore/network.hpp>
#include <appgate/castore/refresh.hpp>
#include <appgate/castore/scenario.hpp>
#include <appgate/castore/sync.hpp>
#include <appgate/registry/client.hpp>

#include <gtest/gtest.h>
#include <httplib.h>

#include <atomic>
#include <random>
#include <sstream>
#include <thread>

using namespace appgate;
using namespace appgate::castore;
using namespace std::chrono_literals;

namespace {

ContentId cid_of(std::string_view s) { return ContentId::of(as_view(s)); }

CastoreErrc fetch_error(Network& net, const ContentId& cid, const std::string& via) {
    try {
        net.fetch(cid, via);
    } catch (const CastoreError& e) {
        return e.code();
    }
    ADD_FAILURE() << "fetch succeeded";
    return CastoreErrc::unknown_node;
}

std::filesystem::path temp_dir(const std::string& name) {
    auto p{std::filesystem::temp_directory_path() / ("appgate-castore-" + name + std::to_string(::getpid()))};
    std::filesystem::remove_all(p);
    return p;
}

}  // namespace

TEST(Network, AddFetchAndCache) {
    SimClock clock;
    Network net{clock};
    net.add_node("origin", NodeKind::origin);
    net.add_node("gw", NodeKind::gateway, 60s);
    const auto cid{net.add("origin", as_view("payload"))};
    EXPECT_EQ(cid, cid_of("payload"));
    EXPECT_EQ(to_string(net.fetch(cid, "gw")), "payload");
    EXPECT_TRUE(net.holds("gw", cid));
    EXPECT_EQ(net.state("gw").cache.at(cid).ttl, 60s);
    clock.advance(61s);
    EXPECT_FALSE(net.holds("gw", cid));
    EXPECT_EQ(net.gc("gw"), std::set<ContentId>{cid});
    EXPECT_TRUE(net.holds("origin", cid));
}

TEST(Network, ViaRules) {
    SimClock clock;
    Network net{clock};
    net.add_node("origin", NodeKind::origin);
    net.add_node("gw", NodeKind::gateway);
    const auto cid{net.add("origin", as_view("x"))};
    EXPECT_EQ(fetch_error(net, cid, "origin"), CastoreErrc::invalid_via);
    net.set_online("gw", false);
    EXPECT_EQ(fetch_error(net, cid, "gw"), CastoreErrc::node_offline);
    EXPECT_THROW(net.fetch(cid, "nobody"), CastoreError);
    EXPECT_THROW(net.add_node("gw", NodeKind::gateway), CastoreError);
}

TEST(Network, IntegrityMismatchIsNeverServed) {
    SimClock clock;
    Network net{clock};
    net.add_node("origin", NodeKind::origin);
    net.add_node("gw", NodeKind::gateway);
    const auto cid{net.add("origin", as_view("x"))};
    net.corrupt("origin", cid);
    EXPECT_EQ(fetch_error(net, cid, "gw"), CastoreErrc::integrity_mismatch);
    EXPECT_FALSE(net.holds("gw", cid));
}

TEST(Network, RemoveUndoesAdd) {
    SimClock clock;
    Network net{clock};
    const auto dir{temp_dir("remove")};
    net.add_node("origin", NodeKind::origin);
    net.attach_directory("origin", dir);
    const auto cid{net.add("origin", as_view("x"))};
    EXPECT_TRUE(std::filesystem::exists(dir / cid.str()));
    net.remove("origin", cid);
    EXPECT_FALSE(net.available(cid));
    EXPECT_FALSE(std::filesystem::exists(dir / cid.str()));
    std::filesystem::remove_all(dir);
}

TEST(Network, DirectoryPersistsPins) {
    const auto dir{temp_dir("persist")};
    ContentId cid;
    {
        SimClock clock;
        Network net{clock};
        net.add_node("p", NodeKind::pinner);
        net.attach_directory("p", dir);
        cid = net.add("p", as_view("kept"));
    }
    SimClock clock;
    Network net{clock};
    net.add_node("p", NodeKind::pinner);
    net.attach_directory("p", dir);
    EXPECT_TRUE(net.state("p").pinned.contains(cid));
    EXPECT_EQ(to_string(net.fetch(cid, "p")), "kept");
    std::filesystem::remove_all(dir);
}

// Random churn checked against an independent model of the availability law.
TEST(Network, ChurnMatchesAvailabilityModel) {
    struct ModelNode {
        NodeKind kind;
        bool online{true};
        Seconds ttl;
        std::set<int> pinned;
        std::map<int, Seconds> cached_at;
    };
    std::mt19937_64 rng{2024};
    SimClock clock;
    Network net{clock};
    std::map<std::string, ModelNode> model;
    const std::vector<std::pair<std::string, NodeKind>> layout{{"o1", NodeKind::origin},  {"o2", NodeKind::origin},
                                                               {"g1", NodeKind::gateway}, {"g2", NodeKind::gateway},
                                                               {"g3", NodeKind::gateway}, {"p1", NodeKind::pinner}};
    for (const auto& [id, kind] : layout) {
        const Seconds ttl{kind == NodeKind::gateway ? Seconds{300 + static_cast<int>(rng() % 600)} : kDefaultTtl};
        net.add_node(id, kind, ttl);
        model[id] = {kind, true, ttl, {}, {}};
    }
    constexpr int kContents{12};
    std::vector<ContentId> cids;
    for (int c{0}; c < kContents; ++c) cids.push_back(cid_of("item-" + std::to_string(c)));
    const auto holds{[&](const ModelNode& n, int c) {
        if (n.pinned.contains(c)) return true;
        const auto it{n.cached_at.find(c)};
        return it != n.cached_at.end() && clock.now() - it->second <= n.ttl;
    }};
    const auto law{[&](int c) {
        return std::any_of(model.begin(), model.end(), [&](const auto& kv) { return kv.second.online && holds(kv.second, c); });
    }};
    const auto pick{[&](auto pred) {
        std::vector<std::string> ids;
        for (const auto& [id, n] : model) {
            if (pred(n)) ids.push_back(id);
        }
        return ids[rng() % ids.size()];
    }};

    std::size_t fetch_ok{0}, fetch_missing{0};
    for (int event{0}; event < 12'000; ++event) {
        const int c{static_cast<int>(rng() % kContents)};
        const auto roll{rng() % 100};
        if (roll < 10) {
            const auto id{pick([](const ModelNode& n) { return n.kind == NodeKind::origin; })};
            auto& n{model[id]};
            if (n.online) {
                net.add(id, as_view("item-" + std::to_string(c)));
                n.pinned.insert(c);
            } else {
                EXPECT_THROW(net.add(id, as_view("item-" + std::to_string(c))), CastoreError);
            }
        } else if (roll < 60) {
            const auto via{pick([](const ModelNode& n) { return n.kind != NodeKind::origin; })};
            auto& v{model[via]};
            if (!v.online) {
                EXPECT_EQ(fetch_error(net, cids[c], via), CastoreErrc::node_offline);
            } else if (law(c)) {
                EXPECT_NO_THROW(net.fetch(cids[c], via)) << event;
                v.cached_at[c] = clock.now();
                ++fetch_ok;
            } else {
                EXPECT_EQ(fetch_error(net, cids[c], via), CastoreErrc::not_found) << event;
                ++fetch_missing;
            }
        } else if (roll < 75) {
            const auto id{pick([](const ModelNode&) { return true; })};
            model[id].online = !model[id].online;
            net.set_online(id, model[id].online);
        } else if (roll < 88) {
            clock.advance(Seconds{static_cast<int>(rng() % 240)});
        } else if (roll < 95) {
            const auto id{pick([](const ModelNode&) { return true; })};
            net.gc(id);
            auto& n{model[id]};
            std::erase_if(n.cached_at, [&](const auto& kv) { return clock.now() - kv.second > n.ttl; });
        } else {
            auto& p{model["p1"]};
            if (!p.online) {
                EXPECT_THROW(net.pin_from_network("p1", cids[c]), CastoreError);
            } else if (p.pinned.contains(c)) {
                EXPECT_FALSE(net.pin_from_network("p1", cids[c]));
            } else if (law(c)) {
                EXPECT_TRUE(net.pin_from_network("p1", cids[c]));
                p.pinned.insert(c);
            } else {
                EXPECT_THROW(net.pin_from_network("p1", cids[c]), CastoreError);
            }
        }
        for (int k{0}; k < kContents; ++k) ASSERT_EQ(net.available(cids[k]), law(k)) << "event " << event << " item " << k;
    }
    EXPECT_GT(fetch_ok, 1000u);
    EXPECT_GT(fetch_missing, 100u);
}

TEST(Network, ConcurrentFetchesAreConsistent) {
    SimClock clock;
    Network net{clock};
    net.add_node("origin", NodeKind::origin);
    for (int g{0}; g < 4; ++g) net.add_node("gw" + std::to_string(g), NodeKind::gateway);
    std::vector<ContentId> cids;
    for (int c{0}; c < 20; ++c) cids.push_back(net.add("origin", as_view("c" + std::to_string(c))));
    std::atomic<int> failures{0};
    std::vector<std::jthread> threads;
    for (int t{0}; t < 8; ++t) {
        threads.emplace_back([&, t] {
            for (int i{0}; i < 200; ++i) {
                const auto& cid{cids[(t * 7 + i) % cids.size()]};
                if (!cid.certifies(net.fetch(cid, "gw" + std::to_string(i % 4)))) ++failures;
            }
        });
    }
    threads.clear();
    EXPECT_EQ(failures, 0);
}

TEST(Refresh, KeepsGatewaysWarm) {
    SimClock clock;
    Network net{clock};
    net.add_node("origin", NodeKind::origin);
    net.add_node("gw", NodeKind::gateway, 30min);
    const auto cid{net.add("origin", as_view("x"))};
    RefreshDaemon daemon{net, {"gw"}, 10min};
    EXPECT_TRUE(daemon.period_within_ttl());
    daemon.add_content(cid);
    EXPECT_TRUE(daemon.on_tick(clock.now()));
    EXPECT_FALSE(daemon.on_tick(clock.now()));
    net.set_online("origin", false);
    for (int i{0}; i < 30; ++i) {
        clock.advance(10min);
        net.gc("gw");
        EXPECT_TRUE(daemon.on_tick(clock.now()));
        EXPECT_TRUE(daemon.last_failures().empty());
    }
    EXPECT_EQ(daemon.cycles(), 31u);
    EXPECT_TRUE(net.available(cid));
}

TEST(Refresh, FailuresAreCollected) {
    SimClock clock;
    Network net{clock};
    net.add_node("gw", NodeKind::gateway);
    EXPECT_FALSE((RefreshDaemon{net, {"gw"}, 40min}.period_within_ttl()));
    RefreshDaemon daemon{net, {"gw", "missing"}, 10min};
    daemon.set_content({cid_of("nothing")});
    EXPECT_EQ(daemon.run_cycle().size(), 2u);
}

TEST(PeriodicTask, RunsUntilDestroyed) {
    std::atomic<int> runs{0};
    {
        PeriodicTask task{5ms, [&] { ++runs; }};
        std::this_thread::sleep_for(60ms);
    }
    const int seen{runs};
    EXPECT_GE(seen, 3);
    std::this_thread::sleep_for(20ms);
    EXPECT_EQ(runs, seen);
}

TEST(Scenario, Files) {
    for (const auto* name : {"origin_offline", "gateway_cache", "refresh", "refresh_too_slow", "pinner", "integrity"}) {
        const auto r{run_scenario_file(std::filesystem::path{APPGATE_SCENARIOS} / (std::string{name} + ".scn"))};
        EXPECT_TRUE(r.passed()) << name << ": line " << (r.failures.empty() ? 0 : r.failures[0].line) << " "
                                << (r.failures.empty() ? "" : r.failures[0].message);
        EXPECT_GT(r.checks, 0u) << name;
    }
}

TEST(Scenario, ReportsWrongExpectations) {
    std::istringstream in{"node o origin\nnode g gateway\nadd o a\nfetch a via g expect=notfound\nbogus\n"};
    const auto r{run_scenario(in)};
    ASSERT_EQ(r.failures.size(), 2u);
    EXPECT_EQ(r.failures[0].line, 4u);
    EXPECT_EQ(r.failures[1].line, 5u);
}

TEST(GatewaySelect, PublicTablePicksLowestRtt) {
    auto table{load_gateway_table(std::filesystem::path{APPGATE_DATA_DIR} / "public_gateways.tsv")};
    ASSERT_EQ(table.size(), 21u);
    std::map<std::string, double> rtts;
    for (const auto& g : table) rtts[g.name] = g.last_rtt;
    const auto best{select_gateway(table, table_probe(rtts))};
    EXPECT_EQ(best.name, "ipfs.jbb.one");
    EXPECT_DOUBLE_EQ(best.last_rtt, 0.04);
}

TEST(GatewaySelect, TiesAndUnreachable) {
    std::vector<GatewayInfo> gws{{"b", "", 0, false}, {"a", "", 0, false}, {"c", "", 0, false}};
    const auto ranked{rank_gateways(gws, table_probe({{"a", 0.2}, {"b", 0.2}}))};
    ASSERT_EQ(ranked.size(), 2u);
    EXPECT_EQ(ranked[0].name, "a");
    EXPECT_FALSE(gws[2].reachable);
    EXPECT_THROW(select_gateway(gws, table_probe({})), NoGatewayReachable);
}

TEST(Sync, PinsEveryRegisteredContent) {
    using ledger::Address;
    const Address owner{Address::derive("o")}, server{Address::derive("s")}, reg_addr{Address::derive("r")};
    ledger::Ledger chain{ledger::Genesis{{{owner, 1'000'000'000'000'000'000}, {server, 1'000'000'000'000'000'000}}}};
    registry::AppRegistry reg{reg_addr, owner};
    registry::RegistryClient client{chain, reg};
    client.whitelist_add(owner, server);
    SimClock clock;
    Network net{clock};
    net.add_node("server", NodeKind::origin);
    net.add_node("pinner", NodeKind::pinner);
    for (int i{0}; i < 5; ++i) {
        registry::AppRecord r{"p" + std::to_string(i), "1", SerialNumber::from_uint(1), "u",
                              registry::RepackVerdict::pass, net.add("server", as_view("apk" + std::to_string(i)))};
        client.store_app(server, r);
    }
    registry::AppRecord ghost{"ghost", "1", SerialNumber::from_uint(1), "u", registry::RepackVerdict::pass, cid_of("never stored")};
    client.store_app(server, ghost);
    auto report{consortium_sync(net, "pinner", chain, reg_addr)};
    EXPECT_EQ(report.newly_pinned.size(), 5u);
    EXPECT_EQ(report.failures.size(), 1u);
    report = consortium_sync(net, "pinner", chain, reg_addr);
    EXPECT_EQ(report.already_pinned.size(), 5u);
    net.set_online("server", false);
    for (int i{0}; i < 5; ++i) EXPECT_NO_THROW(net.fetch(cid_of("apk" + std::to_string(i)), "pinner"));
    net.set_online("pinner", false);
    EXPECT_THROW(consortium_sync(net, "pinner", chain, reg_addr), CastoreError);
}

TEST(HttpGateway, ServesVerifiedBytes) {
    SimClock clock;
    Network net{clock};
    net.add_node("origin", NodeKind::origin);
    net.add_node("gw", NodeKind::gateway);
    const auto cid{net.add("origin", as_view("over http"))};
    httplib::Server server;
    mount_gateway_routes(server, net, "gw");
    const int port{server.bind_to_any_port("127.0.0.1")};
    std::jthread t{[&] { server.listen_after_bind(); }};
    server.wait_until_ready();
    const std::string endpoint{"http://127.0.0.1:" + std::to_string(port)};
    HttpGatewayClient client;
    EXPECT_EQ(to_string(client.fetch(endpoint, cid)), "over http");
    EXPECT_TRUE(client.probe(endpoint, cid));
    try {
        client.fetch(endpoint, cid_of("absent"));
        ADD_FAILURE();
    } catch (const CastoreError& e) {
        EXPECT_EQ(e.code(), CastoreErrc::not_found);
    }
    httplib::Client raw{"127.0.0.1", port};
    EXPECT_EQ(raw.Get("/ipfs/NOTACID")->status, 400);
    server.stop();
}
