// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace appgate::castore {

struct ScenarioFailure {
    std::size_t line{0};
    std::string text;
    std::string message;
};

struct ScenarioResult {
    std::size_t steps{0};
    std::size_t checks{0};
    std::vector<ScenarioFailure> failures;

    [[nodiscard]] bool passed() const noexcept { return failures.empty(); }
};

//! Runs a line-oriented availability scenario (format in docs/formats.md):
//!
//!   node <id> <origin|gateway|pinner> [ttl=<duration>]
//!   add <node> <label>
//!   fetch <label> via <node> [expect=<ok|notfound|integrity|offline>]
//!   offline <node> | online <node>
//!   tick <duration>
//!   gc [<node>]
//!   pin <node> <label>
//!   corrupt <node> <label>
//!   refresh <period> <gw1,gw2,...> <label1,label2,...>
//!   expect <label> <available|unavailable>
//!
//! Durations take an optional s, m or h suffix. The content of <label> is the
//! bytes "content:<label>". Ticks stop at every due refresh and garbage
//! collect all nodes before running the daemons.
//!
//! Every fetch and expect line is also checked against the availability law.
//! Malformed lines are reported as failures.
ScenarioResult run_scenario(std::istream& in);
ScenarioResult run_scenario_file(const std::filesystem::path& path);

}  // namespace appgate::castore
