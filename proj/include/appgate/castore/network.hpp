// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include <appgate/castore/content_id.hpp>

namespace appgate::castore {

using Seconds = std::chrono::seconds;

inline constexpr Seconds kDefaultTtl{std::chrono::minutes{30}};
inline constexpr Seconds kDefaultRefreshPeriod{std::chrono::minutes{10}};

//! Simulated time, advanced only by whoever drives the simulation.
class SimClock {
  public:
    [[nodiscard]] Seconds now() const noexcept { return Seconds{now_.load()}; }
    void advance(Seconds d) noexcept { now_ += d.count(); }
    void set(Seconds t) noexcept { now_ = t.count(); }

  private:
    std::atomic<std::int64_t> now_{0};
};

enum class NodeKind { origin, gateway, pinner };

std::string_view to_string(NodeKind) noexcept;
std::optional<NodeKind> parse_node_kind(std::string_view) noexcept;

struct CacheEntry {
    ContentId content_id;
    Seconds cached_at{0};
    Seconds ttl{kDefaultTtl};

    [[nodiscard]] bool expired(Seconds now) const noexcept { return now - cached_at > ttl; }
};

enum class CastoreErrc { node_offline, not_found, integrity_mismatch, unknown_node, invalid_via, duplicate_node };

std::string_view to_string(CastoreErrc) noexcept;

class CastoreError : public std::runtime_error {
  public:
    CastoreError(CastoreErrc code, const std::string& what);
    [[nodiscard]] CastoreErrc code() const noexcept { return code_; }

  private:
    CastoreErrc code_;
};

//! Point-in-time view of one node, for tests and the operator CLI.
struct NodeState {
    std::string id;
    NodeKind kind{NodeKind::origin};
    bool online{true};
    Seconds ttl{kDefaultTtl};
    std::set<ContentId> pinned;
    std::map<ContentId, CacheEntry> cache;
};

//! In-process content-addressed network of origin, gateway and pinner nodes.
//!
//! Availability law: fetch(cid) succeeds iff some online node has cid pinned
//! or cached with an unexpired entry. Node state is guarded per node; the node
//! table itself by a shared mutex.
class Network {
  public:
    explicit Network(const SimClock& clock) : clock_{clock} {}

    //! ttl applies to cache entries this node installs.
    void add_node(const std::string& id, NodeKind kind, Seconds ttl = kDefaultTtl);
    //! Pinned content of this node is mirrored into dir (one file per content id)
    //! and everything already there is loaded and pinned.
    void attach_directory(const std::string& id, const std::filesystem::path& dir);

    void set_online(const std::string& id, bool online);
    [[nodiscard]] bool online(const std::string& id) const;

    //! Stores and pins bytes at node. Throws node_offline.
    ContentId add(const std::string& id, ByteView bytes);

    //! Retrieves cid through via (a gateway or a pinner's local gateway).
    //! On success via caches the content with a fresh entry.
    //! Throws not_found, integrity_mismatch, node_offline (via down), invalid_via.
    Bytes fetch(const ContentId& cid, const std::string& via);

    //! Fetches cid from the network into node and pins it. Returns false if it
    //! was already pinned there.
    bool pin_from_network(const std::string& id, const ContentId& cid);

    //! Unpins and deletes cid at node (including its on-disk copy). Used to undo an add.
    void remove(const std::string& id, const ContentId& cid);

    //! Drops every expired, unpinned cache entry. Pinned content is never touched.
    std::set<ContentId> gc(const std::string& id);
    std::set<ContentId> gc(const std::string& id, Seconds now);

    //! Pinned, or cached with an unexpired entry (regardless of online state).
    [[nodiscard]] bool holds(const std::string& id, const ContentId& cid) const;
    //! The availability law evaluated directly.
    [[nodiscard]] bool available(const ContentId& cid) const;

    [[nodiscard]] std::vector<std::string> node_ids() const;
    [[nodiscard]] NodeState state(const std::string& id) const;
    [[nodiscard]] Seconds now() const noexcept { return clock_.now(); }

    //! Test hook: flips one byte of the stored copy at node.
    void corrupt(const std::string& id, const ContentId& cid);

  private:
    struct Node {
        mutable std::mutex mu;
        NodeState state;
        std::map<ContentId, Bytes> blobs;
        std::optional<std::filesystem::path> dir;
    };

    [[nodiscard]] Node& node(const std::string& id) const;
    [[nodiscard]] static bool serves_locked(const Node& n, const ContentId& cid, Seconds now);
    //! Bytes from the first online provider (prefer first, then id order), integrity checked.
    Bytes retrieve(const ContentId& cid, const std::string& prefer, const std::string& exclude);

    const SimClock& clock_;
    mutable std::shared_mutex table_mu_;
    std::map<std::string, std::unique_ptr<Node>> nodes_;
};

}  // namespace appgate::castore
