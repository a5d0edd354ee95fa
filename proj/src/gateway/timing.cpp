// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/gateway/timing.hpp>

#include <cmath>
#include <cstdio>
#include <numeric>

namespace appgate::gateway {

std::string_view to_string(Phase p) noexcept {
    switch (p) {
        case Phase::retrieve: return "retrieve";
        case Phase::checksum: return "checksum";
        case Phase::repackaging: return "repackaging";
        case Phase::store_upload: return "storeUpload";
        case Phase::chain_submit: return "chainSubmit";
    }
    return "unknown";
}

double PhaseTimes::phase_sum() const noexcept { return std::accumulate(seconds.begin(), seconds.end(), 0.0); }

double PhaseTimes::overhead() const noexcept {
    const double retrieve{at(Phase::retrieve)};
    if (retrieve <= 0) return 0;
    return (at(Phase::checksum) + at(Phase::repackaging) + at(Phase::store_upload)) / retrieve;
}

void LapTimer::lap(Phase p) noexcept {
    const auto now{Clock::now()};
    times_.seconds[static_cast<std::size_t>(p)] += std::chrono::duration<double>(now - last_).count();
    last_ = now;
}

PhaseTimes LapTimer::finish() noexcept {
    times_.total = std::chrono::duration<double>(Clock::now() - start_).count();
    return times_;
}

PhaseTimes TimingReport::mean() const {
    PhaseTimes m;
    if (runs.empty()) return m;
    for (const auto& r : runs) {
        for (std::size_t i{0}; i < kPhaseCount; ++i) m.seconds[i] += r.seconds[i];
        m.total += r.total;
    }
    for (auto& s : m.seconds) s /= static_cast<double>(runs.size());
    m.total /= static_cast<double>(runs.size());
    return m;
}

double TimingReport::worst_sum_error() const {
    double worst{0};
    for (const auto& r : runs) {
        if (r.total > 0) worst = std::max(worst, std::abs(r.phase_sum() - r.total) / r.total);
    }
    return worst;
}

std::string TimingReport::table() const {
    std::string out{"run"};
    for (std::size_t i{0}; i < kPhaseCount; ++i) out += "\t" + std::string{to_string(static_cast<Phase>(i))};
    out += "\tphaseSum\ttotal\toverhead\n";
    const auto row = [&](const std::string& label, const PhaseTimes& t) {
        char buf[64];
        out += label;
        for (const double s : t.seconds) {
            std::snprintf(buf, sizeof buf, "\t%.6f", s);
            out += buf;
        }
        std::snprintf(buf, sizeof buf, "\t%.6f\t%.6f\t%.4f\n", t.phase_sum(), t.total, t.overhead());
        out += buf;
    };
    for (std::size_t i{0}; i < runs.size(); ++i) row(std::to_string(i + 1), runs[i]);
    row("mean", mean());
    return out;
}

}  // namespace appgate::gateway
