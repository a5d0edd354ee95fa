// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/castore/scenario.hpp>
#include <appgate/castore/network.hpp>
#include <appgate/castore/refresh.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

namespace appgate::castore {
namespace {

struct StepError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Seconds parse_duration(std::string_view s) {
    if (s.empty()) throw StepError{"empty duration"};
    std::int64_t scale{1};
    switch (s.back()) {
        case 's': scale = 1; s.remove_suffix(1); break;
        case 'm': scale = 60; s.remove_suffix(1); break;
        case 'h': scale = 3600; s.remove_suffix(1); break;
        default: break;
    }
    std::int64_t v{0};
    const auto [ptr, ec]{std::from_chars(s.data(), s.data() + s.size(), v)};
    if (ec != std::errc{} || ptr != s.data() + s.size() || v < 0) throw StepError{"bad duration"};
    return Seconds{v * scale};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string part;
    std::istringstream in{s};
    while (std::getline(in, part, sep)) {
        if (!part.empty()) out.push_back(part);
    }
    return out;
}

Bytes content_for(const std::string& label) { return to_bytes("content:" + label); }

class Runner {
  public:
    ScenarioResult run(std::istream& in) {
        std::string line;
        std::size_t lineno{0};
        while (std::getline(in, line)) {
            ++lineno;
            if (const auto hash{line.find('#')}; hash != std::string::npos) line.erase(hash);
            const auto words{split_ws(line)};
            if (words.empty()) continue;
            ++result_.steps;
            try {
                step(words);
            } catch (const StepError& e) {
                result_.failures.push_back({lineno, line, e.what()});
            } catch (const CastoreError& e) {
                result_.failures.push_back({lineno, line, e.what()});
            }
        }
        return std::move(result_);
    }

  private:
    static std::vector<std::string> split_ws(const std::string& s) {
        std::istringstream in{s};
        std::vector<std::string> out;
        for (std::string w; in >> w;) out.push_back(w);
        return out;
    }

    static void arity(const std::vector<std::string>& w, std::size_t lo, std::size_t hi) {
        if (w.size() < lo || w.size() > hi) throw StepError{"wrong number of arguments for " + w[0]};
    }

    static std::string option(const std::vector<std::string>& w, std::string_view key, std::string fallback) {
        for (const auto& word : w) {
            if (word.size() > key.size() && word.compare(0, key.size(), key) == 0 && word[key.size()] == '=') {
                return word.substr(key.size() + 1);
            }
        }
        return fallback;
    }

    void check(bool ok, const std::string& message) {
        ++result_.checks;
        if (!ok) throw StepError{message};
    }

    void step(const std::vector<std::string>& w) {
        const auto& op{w[0]};
        if (op == "node") {
            arity(w, 3, 4);
            const auto kind{parse_node_kind(w[2])};
            if (!kind) throw StepError{"unknown node kind " + w[2]};
            net_.add_node(w[1], *kind, parse_duration(option(w, "ttl", "1800")));
        } else if (op == "add") {
            arity(w, 3, 3);
            net_.add(w[1], content_for(w[2]));
        } else if (op == "fetch") {
            arity(w, 4, 5);
            if (w[2] != "via") throw StepError{"expected: fetch <label> via <node> expect=..."};
            fetch(w[1], w[3], option(w, "expect", ""));
        } else if (op == "offline" || op == "online") {
            arity(w, 2, 2);
            net_.set_online(w[1], op == "online");
        } else if (op == "tick") {
            arity(w, 2, 2);
            advance(clock_.now() + parse_duration(w[1]));
        } else if (op == "gc") {
            arity(w, 1, 2);
            if (w.size() == 2) {
                net_.gc(w[1]);
            } else {
                gc_all();
            }
        } else if (op == "pin") {
            arity(w, 3, 3);
            net_.pin_from_network(w[1], ContentId::of(content_for(w[2])));
        } else if (op == "corrupt") {
            arity(w, 3, 3);
            net_.corrupt(w[1], ContentId::of(content_for(w[2])));
        } else if (op == "refresh") {
            arity(w, 4, 4);
            auto daemon{std::make_unique<RefreshDaemon>(net_, split(w[2], ','), parse_duration(w[1]))};
            std::vector<ContentId> cids;
            for (const auto& label : split(w[3], ',')) cids.push_back(ContentId::of(content_for(label)));
            daemon->set_content(std::move(cids));
            daemon->on_tick(clock_.now());
            daemons_.push_back(std::move(daemon));
        } else if (op == "expect") {
            arity(w, 3, 3);
            if (w[2] != "available" && w[2] != "unavailable") throw StepError{"expected available|unavailable"};
            const bool want{w[2] == "available"};
            const bool got{net_.available(ContentId::of(content_for(w[1])))};
            check(want == got, w[1] + (got ? " is available" : " is unavailable"));
        } else {
            throw StepError{"unknown step " + op};
        }
    }

    void fetch(const std::string& label, const std::string& via, const std::string& expect) {
        const auto cid{ContentId::of(content_for(label))};
        const bool law{net_.available(cid)};
        std::string outcome{"ok"};
        try {
            const auto bytes{net_.fetch(cid, via)};
            check(bytes == content_for(label), "fetched bytes differ");
        } catch (const CastoreError& e) {
            switch (e.code()) {
                case CastoreErrc::not_found: outcome = "notfound"; break;
                case CastoreErrc::integrity_mismatch: outcome = "integrity"; break;
                case CastoreErrc::node_offline: outcome = "offline"; break;
                default: throw;
            }
        }
        if (!expect.empty()) check(outcome == expect, "fetch " + label + ": expected " + expect + ", got " + outcome);
        if (outcome == "ok") check(law, "fetch succeeded although no online node held " + label);
        if (outcome == "notfound") check(!law, "fetch failed although an online node held " + label);
    }

    void gc_all() {
        for (const auto& id : net_.node_ids()) net_.gc(id);
    }

    void advance(Seconds target) {
        for (;;) {
            Seconds next{target};
            for (const auto& d : daemons_) next = std::min(next, d->next_due());
            if (next <= clock_.now() && next != target) next = clock_.now();
            clock_.set(std::max(next, clock_.now()));
            gc_all();
            for (const auto& d : daemons_) d->on_tick(clock_.now());
            if (clock_.now() >= target) break;
        }
    }

    SimClock clock_;
    Network net_{clock_};
    std::vector<std::unique_ptr<RefreshDaemon>> daemons_;
    ScenarioResult result_;
};

}  // namespace

ScenarioResult run_scenario(std::istream& in) { return Runner{}.run(in); }

ScenarioResult run_scenario_file(const std::filesystem::path& path) {
    std::ifstream in{path};
    if (!in) throw std::runtime_error{"cannot open scenario " + path.string()};
    return run_scenario(in);
}

}  // namespace appgate::castore
