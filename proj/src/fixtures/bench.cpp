// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/fixtures/bench.hpp>
#include <appgate/fixtures/records.hpp>
#include <appgate/registry/baseline.hpp>

#include <cstdio>
#include <filesystem>
#include <random>

namespace appgate::fixtures {
namespace {

using ledger::Address;

struct Rig {
    Address owner{Address::derive("bench.owner")};
    Address server{Address::derive("bench.server")};
    ledger::Ledger chain{ledger::Genesis{{{owner, 1'000'000'000'000'000'000}, {server, 4'000'000'000'000'000'000}}}};
};

}  // namespace

GasFigures measure_gas(std::size_t n, std::uint64_t seed) {
    GasFigures g;
    g.records = n;
    g.sstore_set = ledger::kDefaultSchedule.sstore_set;
    g.log_base = ledger::kDefaultSchedule.log_base;

    std::mt19937_64 rng{seed};
    Rig logs, structs;
    registry::AppRegistry reg{Address::derive("bench.registry"), logs.owner};
    registry::StructRegistry base{Address::derive("bench.baseline"), structs.owner};
    registry::RegistryClient client{logs.chain, reg};
    client.whitelist_add(logs.owner, logs.server);
    structs.chain.submit_next(structs.owner, base.address(), 0, registry::calldata::whitelist_add(structs.server), base);

    double bytes{0}, log_gas{0}, base_gas{0}, ratio{0};
    for (std::size_t i{0}; i < n; ++i) {
        auto r{random_record(rng)};
        r.package_name += ".r" + std::to_string(i);
        const auto single{client.store_app(logs.server, r)};
        const auto stored{structs.chain.submit_next(structs.server, base.address(), 0,
                                                    registry::calldata::store_app_baseline(r), base)};
        if (!stored.ok()) throw std::runtime_error{"baseline store reverted: " + stored.revert_reason};
        bytes += static_cast<double>(registry::encode(r).size());
        log_gas += static_cast<double>(single.gas_used);
        base_gas += static_cast<double>(stored.gas_used);
        ratio += static_cast<double>(stored.gas_used) / static_cast<double>(single.gas_used);
    }
    g.mean_record_bytes = bytes / static_cast<double>(n);
    g.mean_log_gas = log_gas / static_cast<double>(n);
    g.mean_baseline_gas = base_gas / static_cast<double>(n);
    g.baseline_ratio = ratio / static_cast<double>(n);

    for (const std::size_t size : {std::size_t{1}, std::size_t{10}, std::size_t{50}, std::size_t{100}}) {
        std::vector<registry::AppRecord> batch;
        double singles{0};
        for (std::size_t i{0}; i < size; ++i) {
            auto r{random_record(rng)};
            r.package_name += ".b" + std::to_string(size) + "." + std::to_string(i);
            singles += static_cast<double>(client.store_app(logs.server, r).gas_used);
            batch.push_back(std::move(r));
        }
        const auto receipt{client.store_app_batch(logs.server, batch)};
        g.batch_ratio[size] = singles / static_cast<double>(receipt.gas_used);
    }

    const auto typical{typical_record()};
    g.typical_record_bytes = registry::encode(typical).size();
    g.typical_gas = client.store_app(logs.server, typical).gas_used;
    return g;
}

std::string format_gas(const GasFigures& g, double reference_fee_eth) {
    std::string out;
    char buf[256];
    const auto line = [&](const char* fmt, auto... args) {
        std::snprintf(buf, sizeof buf, fmt, args...);
        out += buf;
    };
    line("schedule\tsstoreSet=%llu\tlogBase=%llu\tratio=%.4f\n", static_cast<unsigned long long>(g.sstore_set),
         static_cast<unsigned long long>(g.log_base), static_cast<double>(g.sstore_set) / static_cast<double>(g.log_base));
    line("records\t%zu\tmeanRecordBytes=%.1f\n", g.records, g.mean_record_bytes);
    line("storeApp\tmeanGas=%.1f\n", g.mean_log_gas);
    line("storeAppBaseline\tmeanGas=%.1f\n", g.mean_baseline_gas);
    line("baselineRatio\t%.4f\n", g.baseline_ratio);
    for (const auto& [n, r] : g.batch_ratio) line("batch\tn=%zu\tsinglesOverBatch=%.4f\n", n, r);
    line("typicalRecord\tbytes=%zu\tgas=%llu\tfeeAt1Gwei=%.8f ETH\n", g.typical_record_bytes,
         static_cast<unsigned long long>(g.typical_gas), static_cast<double>(g.typical_gas) * 1e-9);
    line("gasPriceAssumption\t1 Gwei; reference mean fee %.8f ETH implies %.1f gas at 1 Gwei, or %.2f Gwei at the "
         "measured typical gas\n",
         reference_fee_eth, reference_fee_eth * 1e9, reference_fee_eth * 1e9 / static_cast<double>(g.typical_gas));
    return out;
}

std::unique_ptr<gateway::GatewayNode> corpus_node(const Corpus& corpus, gateway::NodeConfig config) {
    auto node{std::make_unique<gateway::GatewayNode>(std::move(config), corpus.fetcher())};
    node->set_markets(market::PatternRegistry::parse(fixture_markets_json()));
    node->anchors() = corpus.anchors;
    node->import_serials(corpus.official);
    return node;
}

gateway::TimingReport run_timing(gateway::GatewayNode& node, const Corpus& corpus, std::size_t n) {
    gateway::TimingReport report;
    for (const auto* app : corpus.admissible()) {
        if (report.runs.size() == n) break;
        if (node.find_app(app->package_name, app->version_name)) continue;
        report.runs.push_back(node.upload({app->page_url, std::nullopt}).timing);
    }
    return report;
}

}  // namespace appgate::fixtures
