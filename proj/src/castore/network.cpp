// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#include <appgate/castore/network.hpp>

#include <fstream>
#include <iterator>

namespace appgate::castore {

std::string_view to_string(NodeKind kind) noexcept {
    switch (kind) {
        case NodeKind::origin: return "origin";
        case NodeKind::gateway: return "gateway";
        case NodeKind::pinner: return "pinner";
    }
    return "unknown";
}

std::optional<NodeKind> parse_node_kind(std::string_view s) noexcept {
    if (s == "origin") return NodeKind::origin;
    if (s == "gateway") return NodeKind::gateway;
    if (s == "pinner") return NodeKind::pinner;
    return std::nullopt;
}

std::string_view to_string(CastoreErrc code) noexcept {
    switch (code) {
        case CastoreErrc::node_offline: return "NodeOffline";
        case CastoreErrc::not_found: return "NotFound";
        case CastoreErrc::integrity_mismatch: return "IntegrityMismatch";
        case CastoreErrc::unknown_node: return "UnknownNode";
        case CastoreErrc::invalid_via: return "InvalidVia";
        case CastoreErrc::duplicate_node: return "DuplicateNode";
    }
    return "Unknown";
}

CastoreError::CastoreError(CastoreErrc code, const std::string& what)
    : std::runtime_error{std::string{to_string(code)} + ": " + what}, code_{code} {}

namespace {

void write_blob(const std::filesystem::path& dir, const ContentId& cid, ByteView bytes) {
    const auto tmp{dir / (cid.str() + ".tmp")};
    {
        std::ofstream out{tmp, std::ios::binary | std::ios::trunc};
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error{"cannot write " + tmp.string()};
    }
    std::filesystem::rename(tmp, dir / cid.str());
}

}  // namespace

void Network::add_node(const std::string& id, NodeKind kind, Seconds ttl) {
    std::unique_lock lock{table_mu_};
    if (nodes_.contains(id)) throw CastoreError{CastoreErrc::duplicate_node, id};
    auto n{std::make_unique<Node>()};
    n->state.id = id;
    n->state.kind = kind;
    n->state.ttl = ttl;
    nodes_.emplace(id, std::move(n));
}

Network::Node& Network::node(const std::string& id) const {
    std::shared_lock lock{table_mu_};
    const auto it{nodes_.find(id)};
    if (it == nodes_.end()) throw CastoreError{CastoreErrc::unknown_node, id};
    return *it->second;
}

void Network::attach_directory(const std::string& id, const std::filesystem::path& dir) {
    auto& n{node(id)};
    std::filesystem::create_directories(dir);
    std::lock_guard lock{n.mu};
    n.dir = dir;
    for (const auto& entry : std::filesystem::directory_iterator{dir}) {
        if (!entry.is_regular_file()) continue;
        const auto cid{ContentId::parse(entry.path().filename().string())};
        if (!cid) continue;
        std::ifstream in{entry.path(), std::ios::binary};
        Bytes bytes{std::istreambuf_iterator<char>{in}, std::istreambuf_iterator<char>{}};
        if (!cid->certifies(bytes)) continue;
        n.blobs[*cid] = std::move(bytes);
        n.state.pinned.insert(*cid);
    }
}

void Network::set_online(const std::string& id, bool online) {
    auto& n{node(id)};
    std::lock_guard lock{n.mu};
    n.state.online = online;
}

bool Network::online(const std::string& id) const {
    auto& n{node(id)};
    std::lock_guard lock{n.mu};
    return n.state.online;
}

ContentId Network::add(const std::string& id, ByteView bytes) {
    auto& n{node(id)};
    const auto cid{ContentId::of(bytes)};
    std::lock_guard lock{n.mu};
    if (!n.state.online) throw CastoreError{CastoreErrc::node_offline, id};
    n.blobs[cid] = Bytes{bytes.begin(), bytes.end()};
    n.state.pinned.insert(cid);
    if (n.dir) write_blob(*n.dir, cid, bytes);
    return cid;
}

bool Network::serves_locked(const Node& n, const ContentId& cid, Seconds now) {
    if (!n.blobs.contains(cid)) return false;
    if (n.state.pinned.contains(cid)) return true;
    const auto it{n.state.cache.find(cid)};
    return it != n.state.cache.end() && !it->second.expired(now);
}

Bytes Network::retrieve(const ContentId& cid, const std::string& prefer, const std::string& exclude) {
    std::vector<Node*> order;
    {
        std::shared_lock lock{table_mu_};
        if (const auto it{nodes_.find(prefer)}; it != nodes_.end()) order.push_back(it->second.get());
        for (const auto& [id, n] : nodes_) {
            if (id != prefer && id != exclude) order.push_back(n.get());
        }
    }
    const auto now{clock_.now()};
    for (Node* n : order) {
        Bytes bytes;
        {
            std::lock_guard lock{n->mu};
            if (!n->state.online || !serves_locked(*n, cid, now)) continue;
            bytes = n->blobs.at(cid);
        }
        if (!cid.certifies(bytes)) {
            throw CastoreError{CastoreErrc::integrity_mismatch, cid.str() + " served by " + n->state.id};
        }
        return bytes;
    }
    throw CastoreError{CastoreErrc::not_found, cid.str()};
}

Bytes Network::fetch(const ContentId& cid, const std::string& via) {
    auto& v{node(via)};
    Seconds ttl;
    {
        std::lock_guard lock{v.mu};
        if (v.state.kind == NodeKind::origin) throw CastoreError{CastoreErrc::invalid_via, via};
        if (!v.state.online) throw CastoreError{CastoreErrc::node_offline, via};
        ttl = v.state.ttl;
    }
    Bytes bytes{retrieve(cid, via, {})};
    std::lock_guard lock{v.mu};
    v.blobs.try_emplace(cid, bytes);
    v.state.cache[cid] = CacheEntry{cid, clock_.now(), ttl};
    return bytes;
}

bool Network::pin_from_network(const std::string& id, const ContentId& cid) {
    auto& n{node(id)};
    std::optional<Bytes> local;
    {
        std::lock_guard lock{n.mu};
        if (!n.state.online) throw CastoreError{CastoreErrc::node_offline, id};
        if (n.state.pinned.contains(cid)) return false;
        if (serves_locked(n, cid, clock_.now())) local = n.blobs.at(cid);
    }
    Bytes bytes{local && cid.certifies(*local) ? std::move(*local) : retrieve(cid, {}, id)};
    std::lock_guard lock{n.mu};
    if (n.state.pinned.contains(cid)) return false;
    if (n.dir) write_blob(*n.dir, cid, bytes);
    n.blobs[cid] = std::move(bytes);
    n.state.pinned.insert(cid);
    return true;
}

void Network::remove(const std::string& id, const ContentId& cid) {
    auto& n{node(id)};
    std::lock_guard lock{n.mu};
    n.state.pinned.erase(cid);
    n.state.cache.erase(cid);
    n.blobs.erase(cid);
    if (n.dir) std::filesystem::remove(*n.dir / cid.str());
}

std::set<ContentId> Network::gc(const std::string& id) { return gc(id, clock_.now()); }

std::set<ContentId> Network::gc(const std::string& id, Seconds now) {
    auto& n{node(id)};
    std::lock_guard lock{n.mu};
    std::set<ContentId> evicted;
    for (auto it{n.state.cache.begin()}; it != n.state.cache.end();) {
        const auto& cid{it->first};
        if (it->second.expired(now) && !n.state.pinned.contains(cid)) {
            evicted.insert(cid);
            n.blobs.erase(cid);
            it = n.state.cache.erase(it);
        } else {
            ++it;
        }
    }
    return evicted;
}

bool Network::holds(const std::string& id, const ContentId& cid) const {
    auto& n{node(id)};
    std::lock_guard lock{n.mu};
    return serves_locked(n, cid, clock_.now());
}

bool Network::available(const ContentId& cid) const {
    for (const auto& id : node_ids()) {
        auto& n{node(id)};
        std::lock_guard lock{n.mu};
        if (n.state.online && serves_locked(n, cid, clock_.now())) return true;
    }
    return false;
}

std::vector<std::string> Network::node_ids() const {
    std::shared_lock lock{table_mu_};
    std::vector<std::string> ids;
    for (const auto& [id, n] : nodes_) ids.push_back(id);
    return ids;
}

NodeState Network::state(const std::string& id) const {
    auto& n{node(id)};
    std::lock_guard lock{n.mu};
    return n.state;
}

void Network::corrupt(const std::string& id, const ContentId& cid) {
    auto& n{node(id)};
    std::lock_guard lock{n.mu};
    const auto it{n.blobs.find(cid)};
    if (it == n.blobs.end()) throw CastoreError{CastoreErrc::not_found, cid.str() + " at " + id};
    if (it->second.empty()) {
        it->second.push_back(0x00);
    } else {
        it->second[0] ^= 0xff;
    }
}

}  // namespace appgate::castore
