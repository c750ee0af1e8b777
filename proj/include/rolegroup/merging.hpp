#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "rolegroup/partitioning.hpp"
#include "rolegroup/snapshot.hpp"

namespace rolegroup {

// How each common neighbour group's connection count is normalized before
// taking the minimum in the group similarity score.
enum class SimilarityNormalization {
  // CP(G', G) / |G|. Keeps the score inside [0, 100] without clamping.
  kGroupSize,
  // CP(G', G) / |C(G)|, dividing by the number of distinct neighbour hosts.
  kNeighborHostCount,
};

struct MergeConfig {
  double beta = 0.5;   // connection tolerance, fraction of the larger average
  double s_hi = 80.0;  // threshold when max K >= k_hi
  double s_lo = 55.0;  // threshold otherwise
  std::uint32_t k_hi = 7;
  SimilarityNormalization normalization = SimilarityNormalization::kGroupSize;

  // Requires 0 <= beta <= 1 and 0 <= s_lo < s_hi <= 100.
  void Validate() const;
};

// Group-level view of a snapshot: per-group sizes and degree sums, plus the
// symmetric connection counts CP between distinct groups.
class GroupGraph {
 public:
  GroupGraph(const Partitioning& partitioning, const ConnectionSnapshot& snapshot);

  const Partitioning& partitioning() const { return partitioning_; }
  std::size_t group_count() const { return stats_.size(); }

  // Neighbour groups of `g`, sorted by id.
  std::vector<GroupId> neighbors(GroupId g) const;
  // Host-level connections between two distinct groups.
  std::uint64_t cp(GroupId a, GroupId b) const;
  // Connections from members to hosts outside the group.
  std::uint64_t external_connections(GroupId g) const;
  std::uint64_t internal_connections(GroupId g) const;
  // Distinct hosts outside `g` adjacent to a member.
  std::size_t neighbor_host_count(GroupId g) const;
  std::size_t size(GroupId g) const;
  std::uint64_t degree_sum(GroupId g) const;
  std::uint32_t k_value(GroupId g) const;
  std::uint32_t min_member_degree(GroupId g) const;

  // Folds `absorbed` into `kept`, which takes K `k_value`. Equivalent to
  // rebuilding from the merged partitioning.
  void Merge(GroupId kept, GroupId absorbed, std::uint32_t k_value,
             const ConnectionSnapshot& snapshot);

 private:
  struct Stats {
    GroupId id;
    std::size_t size = 0;
    std::uint64_t degree_sum = 0;
    std::uint64_t internal = 0;
    std::uint64_t external = 0;
    std::size_t neighbor_hosts = 0;
    std::uint32_t k_value = 0;
    std::uint32_t min_degree = 0;
    std::vector<std::pair<std::size_t, std::uint64_t>> cp;  // (slot, count), sorted by slot
  };

  std::size_t slot(GroupId g) const;
  void Recount(std::size_t s, const ConnectionSnapshot& snapshot);

  Partitioning partitioning_;
  std::vector<GroupId> owner_;  // by host index
  std::vector<Stats> stats_;  // ordered by id
};

// Mean member degree of the group.
double GroupAvgConnections(const Group& group, const ConnectionSnapshot& snapshot);

// |a1 - a2| <= beta * max(a1, a2); two zero averages are comparable.
bool MeetsConnectionReq(double a1, double a2, double beta);
bool MeetsConnectionReq(const Group& g1, const Group& g2, const ConnectionSnapshot& snapshot,
                        double beta);

// Similarity in [0, 100] of the connection patterns of two distinct groups,
// accumulated over the neighbour groups they share.
double GroupSimilarity(GroupId g1, GroupId g2, const GroupGraph& graph,
                       SimilarityNormalization normalization = SimilarityNormalization::kGroupSize);

// (kmax >= k_hi and s >= s_hi) or (kmax < k_hi and s >= s_lo).
bool MeetsSimilarityReq(std::uint32_t kmax, double similarity, const MergeConfig& config);
bool MeetsSimilarityReq(GroupId g1, GroupId g2, const GroupGraph& graph, const MergeConfig& config);

struct MergeStep {
  GroupId kept;
  GroupId absorbed;
  double similarity;
  std::uint32_t new_k;
};

struct MergeResult {
  Partitioning partitioning;
  std::vector<MergeStep> steps;
};

// Greedy merge loop: while some pair satisfies both requirements, merge the
// pair with the highest similarity (ties: smallest (min id, max id)). The
// merged group keeps the smaller id and takes the minimum member degree as its
// K.
MergeResult MergePassWithLog(const Partitioning& partitioning, const ConnectionSnapshot& snapshot,
                             const MergeConfig& config = {});
Partitioning MergePass(const Partitioning& partitioning, const ConnectionSnapshot& snapshot,
                       const MergeConfig& config = {});

}  // namespace rolegroup
