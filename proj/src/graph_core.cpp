#include "rolegroup/graph_core.hpp"

#include <algorithm>

#include "rolegroup/error.hpp"

namespace rolegroup {

std::uint32_t PairSimilarity(const ConnectionSnapshot& snapshot, HostIndex a, HostIndex b) {
  auto na = snapshot.neighbors(a);
  auto nb = snapshot.neighbors(b);
  std::uint32_t common = 0;
  auto ia = na.begin();
  auto ib = nb.begin();
  while (ia != na.end() && ib != nb.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  return common;
}

std::uint32_t PairSimilarity(const ConnectionSnapshot& snapshot, const HostId& h1,
                             const HostId& h2) {
  HostIndex a = snapshot.index_of(h1);
  HostIndex b = snapshot.index_of(h2);
  if (a == b) throw ValidationError("pair similarity of '" + h1.str() + "' with itself");
  return PairSimilarity(snapshot, a, b);
}

double AvgSimilarity(const ConnectionSnapshot& snapshot, const HostId& h,
                     std::span<const HostId> group) {
  HostIndex self = snapshot.index_of(h);
  std::uint64_t total = 0;
  std::size_t divisor = 0;
  for (const HostId& member : group) {
    HostIndex m = snapshot.index_of(member);
    if (m == self) continue;
    total += PairSimilarity(snapshot, self, m);
    ++divisor;
  }
  if (divisor == 0) {
    throw UndefinedAverageError("average similarity of '" + h.str() + "' over an empty group");
  }
  return static_cast<double>(total) / static_cast<double>(divisor);
}

ConnGraph::ConnGraph(const ConnectionSnapshot& snapshot)
    : snapshot_(&snapshot),
      group_of_(snapshot.host_count()),
      ungrouped_count_(snapshot.host_count()) {}

std::vector<HostIndex> ConnGraph::ungrouped() const {
  std::vector<HostIndex> out;
  out.reserve(ungrouped_count_);
  for (HostIndex i = 0; i < group_of_.size(); ++i) {
    if (!group_of_[i]) out.push_back(i);
  }
  return out;
}

void ConnGraph::Absorb(std::span<const HostIndex> members, GroupId id) {
  if (group_nodes_.contains(id)) {
    throw ValidationError("group id " + std::to_string(id.value) + " already present");
  }
  for (HostIndex h : members) {
    if (h >= group_of_.size()) throw LookupError("host index out of range");
    if (group_of_[h]) {
      throw ValidationError("host '" + snapshot_->host(h).str() + "' is already grouped");
    }
  }
  std::vector<HostIndex> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  for (HostIndex h : sorted) group_of_[h] = id;
  ungrouped_count_ -= sorted.size();
  group_nodes_.emplace(id, std::move(sorted));
}

std::vector<HostIndex> ConnGraph::GroupNodeHostNeighbors(GroupId id) const {
  auto it = group_nodes_.find(id);
  if (it == group_nodes_.end()) throw LookupError("unknown group node");
  std::vector<HostIndex> out;
  for (HostIndex m : it->second) {
    for (HostIndex n : snapshot_->neighbors(m)) {
      if (!group_of_[n]) out.push_back(n);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<GroupId> ConnGraph::GroupNodeGroupNeighbors(GroupId id) const {
  auto it = group_nodes_.find(id);
  if (it == group_nodes_.end()) throw LookupError("unknown group node");
  std::vector<GroupId> out;
  for (HostIndex m : it->second) {
    for (HostIndex n : snapshot_->neighbors(m)) {
      if (group_of_[n] && *group_of_[n] != id) out.push_back(*group_of_[n]);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ConnGraph BuildConnGraph(const ConnectionSnapshot& snapshot) { return ConnGraph(snapshot); }

CommonNeighborIndex::CommonNeighborIndex(const ConnectionSnapshot& snapshot) {
  const auto n = static_cast<HostIndex>(snapshot.host_count());
  std::vector<std::uint32_t> count(n, 0);
  std::vector<HostIndex> touched;
  std::vector<WeightedEdge> all;
  for (HostIndex u = 0; u < n; ++u) {
    touched.clear();
    for (HostIndex w : snapshot.neighbors(u)) {
      for (HostIndex v : snapshot.neighbors(w)) {
        if (v <= u) continue;
        if (count[v]++ == 0) touched.push_back(v);
      }
    }
    std::sort(touched.begin(), touched.end());
    for (HostIndex v : touched) {
      all.push_back(WeightedEdge{u, v, count[v]});
      count[v] = 0;
    }
  }
  std::uint32_t max_w = 0;
  for (const auto& e : all) max_w = std::max(max_w, e.weight);
  buckets_.assign(all.empty() ? 0 : max_w + 1, {});
  for (const auto& e : all) buckets_[e.weight].push_back(e);
  pair_count_ = all.size();
}

std::span<const WeightedEdge> CommonNeighborIndex::with_weight(std::uint32_t w) const {
  if (w >= buckets_.size()) return {};
  return buckets_[w];
}

namespace {

void CheckK(std::uint32_t k) {
  if (k == 0) throw ValidationError("neighborhood threshold k must be at least 1");
}

}  // namespace

NeighborhoodGraph BuildKNeighborhoodGraph(const ConnectionSnapshot& snapshot, const ConnGraph& conn,
                                          std::uint32_t k) {
  CheckK(k);
  NeighborhoodGraph g;
  g.k = k;
  g.nodes = conn.ungrouped();
  const auto n = static_cast<HostIndex>(snapshot.host_count());
  std::vector<std::uint32_t> count(n, 0);
  std::vector<HostIndex> touched;
  for (HostIndex u : g.nodes) {
    touched.clear();
    for (HostIndex w : snapshot.neighbors(u)) {
      for (HostIndex v : snapshot.neighbors(w)) {
        if (v <= u || conn.is_grouped(v)) continue;
        if (count[v]++ == 0) touched.push_back(v);
      }
    }
    std::sort(touched.begin(), touched.end());
    for (HostIndex v : touched) {
      if (count[v] >= k) g.edges.push_back(WeightedEdge{u, v, count[v]});
      count[v] = 0;
    }
  }
  return g;
}

NeighborhoodGraph BuildKNeighborhoodGraph(const CommonNeighborIndex& index, const ConnGraph& conn,
                                          std::uint32_t k) {
  CheckK(k);
  NeighborhoodGraph g;
  g.k = k;
  g.nodes = conn.ungrouped();
  for (std::uint32_t w = k; w <= index.max_weight(); ++w) {
    for (const auto& e : index.with_weight(w)) {
      if (!conn.is_grouped(e.a) && !conn.is_grouped(e.b)) g.edges.push_back(e);
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

std::vector<std::vector<HostIndex>> FindBiconnectedComponents(const NeighborhoodGraph& graph) {
  // Local renumbering: position in the sorted node list.
  const auto& nodes = graph.nodes;
  const std::size_t n = nodes.size();
  auto local = [&](HostIndex h) -> std::size_t {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), h);
    if (it == nodes.end() || *it != h) throw ValidationError("edge endpoint not among graph nodes");
    return static_cast<std::size_t>(it - nodes.begin());
  };
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : graph.edges) {
    std::size_t a = local(e.a);
    std::size_t b = local(e.b);
    if (a == b) continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> disc(n, kUnvisited);
  std::vector<std::size_t> low(n, 0);
  std::vector<std::size_t> vertex_stack;
  std::vector<std::vector<HostIndex>> components;
  std::size_t timer = 0;

  struct Frame {
    std::size_t v;
    std::size_t parent;
    std::size_t next;
  };
  std::vector<Frame> dfs;

  for (std::size_t root = 0; root < n; ++root) {
    if (disc[root] != kUnvisited || adj[root].empty()) continue;
    disc[root] = low[root] = timer++;
    vertex_stack.push_back(root);
    dfs.push_back(Frame{root, kUnvisited, 0});
    while (!dfs.empty()) {
      Frame& f = dfs.back();
      if (f.next < adj[f.v].size()) {
        std::size_t w = adj[f.v][f.next++];
        if (disc[w] == kUnvisited) {
          disc[w] = low[w] = timer++;
          vertex_stack.push_back(w);
          dfs.push_back(Frame{w, f.v, 0});
        } else if (w != f.parent) {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
        continue;
      }
      const std::size_t v = f.v;
      const std::size_t parent = f.parent;
      dfs.pop_back();
      if (parent == kUnvisited) {
        vertex_stack.pop_back();  // the root itself
        continue;
      }
      low[parent] = std::min(low[parent], low[v]);
      if (low[v] >= disc[parent]) {
        std::vector<HostIndex> comp;
        while (true) {
          std::size_t x = vertex_stack.back();
          vertex_stack.pop_back();
          comp.push_back(nodes[x]);
          if (x == v) break;
        }
        comp.push_back(nodes[parent]);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
    }
  }
  std::sort(components.begin(), components.end());
  return components;
}

}  // namespace rolegroup
