#pragma once

#include <cstdint>
#include <vector>

#include "rolegroup/graph_core.hpp"
#include "rolegroup/partitioning.hpp"
#include "rolegroup/snapshot.hpp"

namespace rolegroup {

struct FormationConfig {
  // A host still ungrouped at threshold k becomes a singleton once
  // k < alpha * |C(h)|.
  double alpha = 0.6;

  void Validate() const;
};

enum class FormationStep {
  kBiconnected,  // group extracted from a k-neighbourhood graph
  kBootstrap,    // singleton created by the alpha rule
  kSweep,        // leftover host after k reached 1
};

struct FormationEvent {
  std::uint32_t k;
  // Index of the extraction round; groups sharing a round came from the same
  // k-neighbourhood graph.
  std::uint32_t round;
  GroupId id;
  FormationStep step;
  std::vector<HostId> members;
};

struct FormationResult {
  Partitioning partitioning;
  std::vector<FormationEvent> log;  // creation order
};

// Iterates k from the maximum host degree down to 1. At each k, biconnected
// components of the k-neighbourhood graph over still-ungrouped hosts become
// groups labelled k, until none form; then the alpha rule turns remaining
// hosts into singletons. Whatever is left after k = 1 becomes k = 0
// singletons. Ids are handed out in creation order starting at 0.
FormationResult FormGroupsWithLog(const ConnectionSnapshot& snapshot,
                                  const FormationConfig& config = {});
Partitioning FormGroups(const ConnectionSnapshot& snapshot, const FormationConfig& config = {});

// Makes overlapping components disjoint: a vertex shared by several
// components stays in the largest one (ties go to the component whose sorted
// member list is lexicographically least). Components left with fewer than
// two vertices are dropped. Output sets are sorted, list ordered by the
// smallest member.
std::vector<std::vector<HostIndex>> ResolveBccMembership(
    const std::vector<std::vector<HostIndex>>& components);

}  // namespace rolegroup
