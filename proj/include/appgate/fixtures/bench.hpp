// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <appgate/fixtures/market_corpus.hpp>
#include <appgate/gateway/node.hpp>
#include <appgate/gateway/timing.hpp>

namespace appgate::fixtures {

struct GasFigures {
    std::size_t records{0};
    double mean_record_bytes{0};
    double mean_log_gas{0};
    double mean_baseline_gas{0};
    //! Mean over records of baseline gas / log gas.
    double baseline_ratio{0};
    //! n -> (gas of n single uploads) / (gas of one batch of n).
    std::map<std::size_t, double> batch_ratio;
    std::uint64_t typical_gas{0};
    std::size_t typical_record_bytes{0};
    std::uint64_t sstore_set{0};
    std::uint64_t log_base{0};
};

//! Executes every figure on fresh ledgers with the default schedule.
GasFigures measure_gas(std::size_t records = 140, std::uint64_t seed = 2019);

std::string format_gas(const GasFigures& g, double reference_fee_eth = 0.00008466);

//! Uploads the first n admissible corpus apps through node and collects their phase timings.
gateway::TimingReport run_timing(gateway::GatewayNode& node, const Corpus& corpus, std::size_t n = 20);

//! Node fetching from the corpus map, with the fixture markets, anchors and official serials installed.
std::unique_ptr<gateway::GatewayNode> corpus_node(const Corpus& corpus, gateway::NodeConfig config);

}  // namespace appgate::fixtures
