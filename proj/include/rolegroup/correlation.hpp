#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "rolegroup/merging.hpp"
#include "rolegroup/partitioning.hpp"
#include "rolegroup/snapshot.hpp"

namespace rolegroup {

struct CorrelationConfig {
  // Relative tolerance for connection-set sizes and group average
  // connections, as a fraction.
  double t_hi = 0.3;
  // Minimum normalized time-varying similarity for a first-step match.
  double sim_threshold = 0.5;
  // Minimum neighbour-pattern similarity (0-100) for a second-step match.
  double step2_threshold = 55.0;
  SimilarityNormalization normalization = SimilarityNormalization::kGroupSize;

  void Validate() const;
};

enum class MatchStep {
  kTimeVarying = 1,     // strongest time-varying similarity
  kNeighborPattern = 2, // similar connection pattern to correlated neighbour groups
};

struct Match {
  GroupId prior;
  MatchStep step;
  double score;
};

struct CorrelationResult {
  std::map<GroupId, Match> matches;  // keyed by current group id
  std::vector<GroupId> new_groups;      // current ids, sorted
  std::vector<GroupId> retired_groups;  // prior ids, sorted
  std::vector<HostId> h_same;           // sorted

  std::map<GroupId, GroupId> mapping() const;
};

// One grouping run: the snapshot and the partitioning computed from it.
struct RunView {
  const ConnectionSnapshot& snapshot;
  const Partitioning& partitioning;
};

// Both snapshots restricted to their common hosts. Throws AlignmentError when
// they share none.
std::pair<ConnectionSnapshot, ConnectionSnapshot> AlignSnapshots(const ConnectionSnapshot& prev,
                                                                 const ConnectionSnapshot& curr);

// Hosts present in both snapshots whose connection sets are equal.
std::vector<HostId> ComputeHSame(const ConnectionSnapshot& prev, const ConnectionSnapshot& curr);

// (current neighbour, prior neighbour)
using NeighborPair = std::pair<HostId, HostId>;

// Matches neighbours of `current` (in `curr`) with neighbours of `prior` (in
// `prev`). A host that is a neighbour of both and unchanged pairs with itself.
// Other neighbours outside `h_same` pair by connection-set size: each current
// neighbour, in token order, takes the unpaired prior neighbour whose size is
// closest to its own, provided the difference is within t_hi of its own size
// (ties to the smaller token). Members absent from a snapshot are ignored.
std::vector<NeighborPair> PairNeighbors(const Group& current, const Group& prior,
                                        std::span<const HostId> h_same,
                                        const ConnectionSnapshot& prev,
                                        const ConnectionSnapshot& curr, double t_hi);

// Sum over pairs of min(CP(h_t, G_t)/|G_t|, CP(h_p, G_p)/|G_p|), divided by
// the larger of the two groups' total per-member external connections. 0 when
// either group has no external connections.
double TimeVaryingSimilarity(const Group& current, const Group& prior,
                             std::span<const NeighborPair> pairs, const ConnectionSnapshot& prev,
                             const ConnectionSnapshot& curr);

// Assigns prior ids to current groups. Throws AlignmentError when the runs
// share no hosts.
CorrelationResult Correlate(const RunView& prev, const RunView& curr,
                            const CorrelationConfig& config = {});

// Rewrites ids of `curr`: matched groups take their prior id, new groups get
// fresh ids above every prior id in current-id order.
Partitioning ApplyCorrelation(const Partitioning& curr, const Partitioning& prev,
                              const CorrelationResult& result);

}  // namespace rolegroup
