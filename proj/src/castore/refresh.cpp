// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/castore/refresh.hpp>

#include <algorithm>

namespace appgate::castore {

RefreshDaemon::RefreshDaemon(Network& network, std::vector<std::string> gateways, Seconds period)
    : network_{network}, gateways_{std::move(gateways)}, period_{period}, next_due_{network.now()} {}

void RefreshDaemon::set_content(std::vector<ContentId> cids) {
    std::lock_guard lock{mu_};
    cids_ = std::move(cids);
}

void RefreshDaemon::add_content(const ContentId& cid) {
    std::lock_guard lock{mu_};
    if (std::find(cids_.begin(), cids_.end(), cid) == cids_.end()) cids_.push_back(cid);
}

bool RefreshDaemon::period_within_ttl() const {
    for (const auto& gw : gateways_) {
        if (period_ >= network_.state(gw).ttl) return false;
    }
    return true;
}

std::vector<RefreshFailure> RefreshDaemon::run_cycle() {
    std::vector<ContentId> cids;
    {
        std::lock_guard lock{mu_};
        cids = cids_;
    }
    std::vector<RefreshFailure> failures;
    for (const auto& gw : gateways_) {
        for (const auto& cid : cids) {
            try {
                network_.fetch(cid, gw);
            } catch (const std::exception& e) {
                failures.push_back({gw, cid, e.what()});
            }
        }
    }
    std::lock_guard lock{mu_};
    ++cycles_;
    last_failures_ = failures;
    return failures;
}

bool RefreshDaemon::on_tick(Seconds now) {
    if (now < next_due_) return false;
    run_cycle();
    while (next_due_ <= now) next_due_ += period_;
    return true;
}

PeriodicTask::PeriodicTask(std::chrono::milliseconds interval, std::function<void()> fn)
    : thread_{[this, interval, fn = std::move(fn)](std::stop_token stop) {
          std::unique_lock lock{mu_};
          while (!stop.stop_requested()) {
              lock.unlock();
              fn();
              lock.lock();
              cv_.wait_for(lock, stop, interval, [] { return false; });
          }
      }} {}

PeriodicTask::~PeriodicTask() {
    thread_.request_stop();
    thread_.join();
}

}  // namespace appgate::castore
