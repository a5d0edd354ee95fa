// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/fixtures/market_corpus.hpp>

#include <CLI11.hpp>
#include <httplib.h>

#include <iostream>

using namespace appgate;

int main(int argc, char** argv) {
    CLI::App app{"make-fixtures: write or serve the fixture market corpus"};
    std::string dir;
    std::size_t apps{3};
    std::uint64_t seed{1};
    int port{-1};
    app.add_option("dir", dir, "output directory")->required();
    app.add_option("--apps", apps, "apps per market");
    app.add_option("--seed", seed);
    app.add_option("--serve", port, "after writing, serve the corpus on 127.0.0.1:<port> (0 picks one)");
    CLI11_PARSE(app, argc, argv);

    try {
        const auto corpus{fixtures::build_corpus({apps, seed})};
        fixtures::write_corpus(corpus, dir);
        std::cout << "wrote " << corpus.apps.size() << " fixture apps to " << dir << '\n';
        if (port < 0) return 0;

        httplib::Server server;
        market::mount_fixture_routes(server, fixtures::load_corpus_resources(dir));
        const int bound{port == 0 ? server.bind_to_any_port("127.0.0.1") : (server.bind_to_port("127.0.0.1", port) ? port : -1)};
        if (bound < 0) throw std::runtime_error{"cannot bind port " + std::to_string(port)};
        std::set<std::string> hosts;
        for (const auto& a : corpus.apps) {
            for (const auto* u : {&a.page_url, &a.download_url}) hosts.insert(market::parse_url(*u)->host);
        }
        std::cout << "\"hostAliases\": {";
        const char* sep{""};
        for (const auto& h : hosts) {
            std::cout << sep << "\n  \"" << h << "\": \"127.0.0.1:" << bound << "\"";
            sep = ",";
        }
        std::cout << "\n}" << std::endl;
        server.listen_after_bind();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
