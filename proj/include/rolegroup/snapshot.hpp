#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rolegroup {

// Opaque host token. Non-empty and free of whitespace; compared byte-wise.
class HostId {
 public:
  explicit HostId(std::string token);

  const std::string& str() const { return token_; }

  friend auto operator<=>(const HostId&, const HostId&) = default;
  friend bool operator==(const HostId&, const HostId&) = default;

  static bool IsValidToken(std::string_view token);

 private:
  std::string token_;
};

// Dense index of a host inside one snapshot. Indices follow token order.
using HostIndex = std::uint32_t;

// Unordered host pair, stored with the lexicographically smaller token first.
struct Connection {
  HostId a;
  HostId b;

  static Connection Canonical(HostId x, HostId y);
  friend auto operator<=>(const Connection&, const Connection&) = default;
  friend bool operator==(const Connection&, const Connection&) = default;
};

// The observed undirected host-to-host connections of one capture period.
//
// Immutable once built. Hosts are kept sorted by token so that every
// traversal over the snapshot is deterministic; adjacency lists are sorted
// index lists.
class ConnectionSnapshot {
 public:
  ConnectionSnapshot() = default;

  // Validates and canonicalizes. Duplicate pairs (in either orientation) are
  // collapsed. Throws ValidationError on a self-pair or on an endpoint that is
  // not listed in `hosts`; the message names the offending record.
  static ConnectionSnapshot Build(std::string label, std::vector<HostId> hosts,
                                  std::vector<std::pair<HostId, HostId>> connections);

  // Same as Build, but the host set is the union of `extra_hosts` and all
  // connection endpoints.
  static ConnectionSnapshot FromConnections(std::string label,
                                            std::vector<std::pair<HostId, HostId>> connections,
                                            std::vector<HostId> extra_hosts = {});

  const std::string& label() const { return label_; }
  std::size_t host_count() const { return hosts_.size(); }
  std::size_t connection_count() const { return connection_count_; }
  bool empty() const { return hosts_.empty(); }

  std::span<const HostId> hosts() const { return hosts_; }
  const HostId& host(HostIndex i) const { return hosts_[i]; }

  std::optional<HostIndex> find(const HostId& h) const;
  // Throws LookupError for an unknown host.
  HostIndex index_of(const HostId& h) const;
  bool contains(const HostId& h) const { return find(h).has_value(); }

  std::span<const HostIndex> neighbors(HostIndex i) const { return adjacency_[i]; }
  std::size_t degree(HostIndex i) const { return adjacency_[i].size(); }
  std::size_t max_degree() const;
  bool connected(HostIndex a, HostIndex b) const;

  // Canonical pairs, sorted.
  std::vector<Connection> connections() const;

  // Copy restricted to `keep`; connections touching dropped hosts vanish.
  ConnectionSnapshot Restrict(std::span<const HostId> keep) const;

  friend bool operator==(const ConnectionSnapshot& x, const ConnectionSnapshot& y) {
    return x.label_ == y.label_ && x.hosts_ == y.hosts_ && x.adjacency_ == y.adjacency_;
  }

 private:
  std::string label_;
  std::vector<HostId> hosts_;
  std::vector<std::vector<HostIndex>> adjacency_;
  std::size_t connection_count_ = 0;
};

}  // namespace rolegroup
