#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "rolegroup/snapshot.hpp"

namespace rolegroup {

struct GroupId {
  std::uint32_t value = 0;
  friend auto operator<=>(const GroupId&, const GroupId&) = default;
};

// Size of the intersection of the connection sets of two hosts.
std::uint32_t PairSimilarity(const ConnectionSnapshot& snapshot, HostIndex a, HostIndex b);
// Throws LookupError for unknown hosts, ValidationError when h1 == h2.
std::uint32_t PairSimilarity(const ConnectionSnapshot& snapshot, const HostId& h1, const HostId& h2);

// Mean pair similarity between `h` and the members of `group`. When `h` is a
// member its own term is skipped and the divisor is |group| - 1. Throws
// UndefinedAverageError when nothing is left to average over.
double AvgSimilarity(const ConnectionSnapshot& snapshot, const HostId& h,
                     std::span<const HostId> group);

// Host-level connectivity graph in which absorbed hosts are represented by a
// single group node. Host adjacency itself never changes.
class ConnGraph {
 public:
  explicit ConnGraph(const ConnectionSnapshot& snapshot);

  const ConnectionSnapshot& snapshot() const { return *snapshot_; }

  bool is_grouped(HostIndex h) const { return group_of_[h].has_value(); }
  std::optional<GroupId> group_of(HostIndex h) const { return group_of_[h]; }
  std::vector<HostIndex> ungrouped() const;
  std::size_t ungrouped_count() const { return ungrouped_count_; }
  std::size_t group_node_count() const { return group_nodes_.size(); }

  // Replaces `members` with one group node. Throws ValidationError if any
  // member is already grouped or the id is taken.
  void Absorb(std::span<const HostIndex> members, GroupId id);

  // Neighbouring nodes of a group node: ungrouped hosts and other group nodes
  // adjacent to any member.
  std::vector<HostIndex> GroupNodeHostNeighbors(GroupId id) const;
  std::vector<GroupId> GroupNodeGroupNeighbors(GroupId id) const;

 private:
  const ConnectionSnapshot* snapshot_;
  std::vector<std::optional<GroupId>> group_of_;
  std::map<GroupId, std::vector<HostIndex>> group_nodes_;
  std::size_t ungrouped_count_;
};

ConnGraph BuildConnGraph(const ConnectionSnapshot& snapshot);

struct WeightedEdge {
  HostIndex a;  // a < b
  HostIndex b;
  std::uint32_t weight;
  friend auto operator<=>(const WeightedEdge&, const WeightedEdge&) = default;
};

// Graph over ungrouped hosts whose edges join pairs with at least k common
// neighbours, weighted by that count.
struct NeighborhoodGraph {
  std::uint32_t k = 1;
  std::vector<HostIndex> nodes;      // sorted
  std::vector<WeightedEdge> edges;   // sorted
};

// All host pairs with a non-zero common-neighbour count, bucketed by count.
// Counts always refer to the original host adjacency.
class CommonNeighborIndex {
 public:
  explicit CommonNeighborIndex(const ConnectionSnapshot& snapshot);

  std::uint32_t max_weight() const {
    return buckets_.empty() ? 0 : static_cast<std::uint32_t>(buckets_.size() - 1);
  }
  // Edges whose weight equals `w` exactly, sorted.
  std::span<const WeightedEdge> with_weight(std::uint32_t w) const;
  std::size_t pair_count() const { return pair_count_; }

 private:
  std::vector<std::vector<WeightedEdge>> buckets_;
  std::size_t pair_count_ = 0;
};

NeighborhoodGraph BuildKNeighborhoodGraph(const ConnectionSnapshot& snapshot, const ConnGraph& conn,
                                          std::uint32_t k);
NeighborhoodGraph BuildKNeighborhoodGraph(const CommonNeighborIndex& index, const ConnGraph& conn,
                                          std::uint32_t k);

// Vertex sets of all biconnected components with at least two vertices. A
// bridge is its own two-vertex component; cut vertices appear in several sets.
// Each set is sorted and the list is sorted.
std::vector<std::vector<HostIndex>> FindBiconnectedComponents(const NeighborhoodGraph& graph);

}  // namespace rolegroup
