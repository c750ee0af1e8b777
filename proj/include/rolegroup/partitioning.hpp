#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rolegroup/graph_core.hpp"
#include "rolegroup/snapshot.hpp"

namespace rolegroup {

struct Group {
  GroupId id;
  std::uint32_t k_value = 0;
  std::vector<HostId> members;  // sorted, non-empty

  friend bool operator==(const Group&, const Group&) = default;
};

// Disjoint groups covering every host of one snapshot, ordered by id.
struct Partitioning {
  std::string snapshot_label;
  std::vector<Group> groups;

  const Group* find(GroupId id) const;
  std::size_t host_count() const;
  // Sorted, id order ignored.
  std::vector<std::vector<HostId>> member_sets() const;

  friend bool operator==(const Partitioning&, const Partitioning&) = default;
};

// Throws ValidationError unless `p` is disjoint, uses unique ids, has no empty
// group and covers exactly the hosts of `snapshot`.
void ValidatePartitioning(const Partitioning& p, const ConnectionSnapshot& snapshot);

// group id per host index; throws as ValidatePartitioning.
std::vector<GroupId> GroupAssignment(const Partitioning& p, const ConnectionSnapshot& snapshot);

}  // namespace rolegroup
