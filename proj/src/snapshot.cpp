#include "rolegroup/snapshot.hpp"

#include <algorithm>
#include <cctype>

#include "rolegroup/error.hpp"

namespace rolegroup {

bool HostId::IsValidToken(std::string_view token) {
  if (token.empty()) return false;
  return std::none_of(token.begin(), token.end(),
                      [](unsigned char c) { return std::isspace(c) || std::iscntrl(c); });
}

HostId::HostId(std::string token) : token_(std::move(token)) {
  if (!IsValidToken(token_)) {
    throw ValidationError("invalid host token '" + token_ + "'");
  }
}

Connection Connection::Canonical(HostId x, HostId y) {
  if (y < x) std::swap(x, y);
  return Connection{std::move(x), std::move(y)};
}

ConnectionSnapshot ConnectionSnapshot::Build(std::string label, std::vector<HostId> hosts,
                                             std::vector<std::pair<HostId, HostId>> connections) {
  ConnectionSnapshot s;
  s.label_ = std::move(label);
  std::sort(hosts.begin(), hosts.end());
  hosts.erase(std::unique(hosts.begin(), hosts.end()), hosts.end());
  s.hosts_ = std::move(hosts);
  s.adjacency_.resize(s.hosts_.size());

  for (const auto& [x, y] : connections) {
    if (x == y) {
      throw ValidationError("self-pair connection (" + x.str() + "," + y.str() + ")");
    }
    auto ix = s.find(x);
    auto iy = s.find(y);
    if (!ix || !iy) {
      const HostId& missing = ix ? y : x;
      throw ValidationError("connection (" + x.str() + "," + y.str() + ") references unknown host '" +
                            missing.str() + "'");
    }
    s.adjacency_[*ix].push_back(*iy);
    s.adjacency_[*iy].push_back(*ix);
  }
  std::size_t endpoints = 0;
  for (auto& adj : s.adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    endpoints += adj.size();
  }
  s.connection_count_ = endpoints / 2;
  return s;
}

ConnectionSnapshot ConnectionSnapshot::FromConnections(
    std::string label, std::vector<std::pair<HostId, HostId>> connections,
    std::vector<HostId> extra_hosts) {
  std::vector<HostId> hosts = std::move(extra_hosts);
  hosts.reserve(hosts.size() + 2 * connections.size());
  for (const auto& [x, y] : connections) {
    hosts.push_back(x);
    hosts.push_back(y);
  }
  return Build(std::move(label), std::move(hosts), std::move(connections));
}

std::optional<HostIndex> ConnectionSnapshot::find(const HostId& h) const {
  auto it = std::lower_bound(hosts_.begin(), hosts_.end(), h);
  if (it == hosts_.end() || *it != h) return std::nullopt;
  return static_cast<HostIndex>(it - hosts_.begin());
}

HostIndex ConnectionSnapshot::index_of(const HostId& h) const {
  auto i = find(h);
  if (!i) throw LookupError("unknown host '" + h.str() + "'");
  return *i;
}

std::size_t ConnectionSnapshot::max_degree() const {
  std::size_t best = 0;
  for (const auto& adj : adjacency_) best = std::max(best, adj.size());
  return best;
}

bool ConnectionSnapshot::connected(HostIndex a, HostIndex b) const {
  const auto& adj = adjacency_[a];
  return std::binary_search(adj.begin(), adj.end(), b);
}

std::vector<Connection> ConnectionSnapshot::connections() const {
  std::vector<Connection> out;
  out.reserve(connection_count_);
  for (HostIndex i = 0; i < adjacency_.size(); ++i) {
    for (HostIndex j : adjacency_[i]) {
      if (i < j) out.push_back(Connection{hosts_[i], hosts_[j]});
    }
  }
  return out;
}

ConnectionSnapshot ConnectionSnapshot::Restrict(std::span<const HostId> keep) const {
  std::vector<bool> kept(hosts_.size(), false);
  std::vector<HostId> hosts;
  for (const HostId& h : keep) {
    if (auto i = find(h); i && !kept[*i]) {
      kept[*i] = true;
      hosts.push_back(h);
    }
  }
  std::vector<std::pair<HostId, HostId>> pairs;
  for (HostIndex i = 0; i < adjacency_.size(); ++i) {
    if (!kept[i]) continue;
    for (HostIndex j : adjacency_[i]) {
      if (i < j && kept[j]) pairs.emplace_back(hosts_[i], hosts_[j]);
    }
  }
  return Build(label_, std::move(hosts), std::move(pairs));
}

}  // namespace rolegroup
