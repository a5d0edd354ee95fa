// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <chrono>
#include <string>
#include <string_view>
#include <vector>

namespace appgate::gateway {

enum class Phase { retrieve, checksum, repackaging, store_upload, chain_submit };
inline constexpr std::size_t kPhaseCount{5};

std::string_view to_string(Phase) noexcept;

struct PhaseTimes {
    std::array<double, kPhaseCount> seconds{};
    //! Wall clock from pipeline start to return, measured independently of the laps.
    double total{0};

    [[nodiscard]] double at(Phase p) const noexcept { return seconds[static_cast<std::size_t>(p)]; }
    [[nodiscard]] double phase_sum() const noexcept;
    //! (checksum + repackaging + storeUpload) / retrieve. Chain submission is not overhead.
    [[nodiscard]] double overhead() const noexcept;
};

//! Attributes the time since the previous lap to a phase.
class LapTimer {
  public:
    LapTimer() noexcept : start_{Clock::now()}, last_{start_} {}
    void lap(Phase p) noexcept;
    [[nodiscard]] PhaseTimes finish() noexcept;

  private:
    using Clock = std::chrono::steady_clock;
    Clock::time_point start_;
    Clock::time_point last_;
    PhaseTimes times_;
};

struct TimingReport {
    std::vector<PhaseTimes> runs;

    [[nodiscard]] PhaseTimes mean() const;
    //! Largest |phase_sum - total| / total over all runs.
    [[nodiscard]] double worst_sum_error() const;
    //! Tab-separated: one row per run, then a mean row; seconds with microsecond precision.
    [[nodiscard]] std::string table() const;
};

}  // namespace appgate::gateway
