// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <condition_variable>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <appgate/castore/network.hpp>

namespace appgate::castore {

struct RefreshFailure {
    std::string gateway;
    ContentId content_id;
    std::string error;
};

//! Keeps gateway caches warm by re-requesting every content id through every
//! configured gateway once per period, ahead of their cache expiry.
class RefreshDaemon {
  public:
    RefreshDaemon(Network& network, std::vector<std::string> gateways, Seconds period = kDefaultRefreshPeriod);

    void set_content(std::vector<ContentId> cids);
    void add_content(const ContentId& cid);

    //! period < the smallest gateway ttl. Refreshing is only guaranteed to
    //! outlive the origin when this holds.
    [[nodiscard]] bool period_within_ttl() const;

    //! One pass over gateways x content. Failures are collected, never fatal.
    std::vector<RefreshFailure> run_cycle();

    //! Runs a cycle when now has reached the next due time. Returns true if it ran.
    bool on_tick(Seconds now);

    [[nodiscard]] Seconds period() const noexcept { return period_; }
    [[nodiscard]] Seconds next_due() const noexcept { return next_due_; }
    [[nodiscard]] std::size_t cycles() const noexcept { return cycles_; }
    [[nodiscard]] const std::vector<RefreshFailure>& last_failures() const noexcept { return last_failures_; }

  private:
    Network& network_;
    std::vector<std::string> gateways_;
    Seconds period_;
    std::vector<ContentId> cids_;
    Seconds next_due_{0};
    std::size_t cycles_{0};
    std::vector<RefreshFailure> last_failures_;
    mutable std::mutex mu_;
};

//! Runs a callback on a fixed wall-clock interval on its own thread until destroyed.
class PeriodicTask {
  public:
    PeriodicTask(std::chrono::milliseconds interval, std::function<void()> fn);
    ~PeriodicTask();

    PeriodicTask(const PeriodicTask&) = delete;
    PeriodicTask& operator=(const PeriodicTask&) = delete;

  private:
    std::mutex mu_;
    std::condition_variable_any cv_;
    std::jthread thread_;
};

}  // namespace appgate::castore
