#pragma once

#include <cstdint>
#include <vector>

#include "rolegroup/correlation.hpp"
#include "rolegroup/partitioning.hpp"

namespace rolegroup {

// Pair counts comparing a computed partitioning P with a reference P*. The
// first letter refers to P*, the second to P: sd counts pairs together in P*
// but split in P.
struct RandCounts {
  std::uint64_t ss = 0;
  std::uint64_t sd = 0;
  std::uint64_t ds = 0;
  std::uint64_t dd = 0;
  double r = 1.0;

  std::uint64_t total() const { return ss + sd + ds + dd; }
};

// (ss + dd) / total; 1 when there are no pairs.
RandCounts RandFromCounts(std::uint64_t ss, std::uint64_t sd, std::uint64_t ds, std::uint64_t dd);

// Throws ValidationError listing the symmetric difference when the two
// partitionings cover different hosts.
RandCounts RandStatistic(const Partitioning& p, const Partitioning& p_star);

struct GroupDiff {
  GroupId prior_id;
  GroupId current_id;
  std::vector<HostId> added;
  std::vector<HostId> removed;
  std::uint32_t k_before = 0;
  std::uint32_t k_after = 0;

  friend bool operator==(const GroupDiff&, const GroupDiff&) = default;
};

struct DiffReport {
  std::vector<GroupDiff> changed;    // correlated groups with any difference, by prior id
  std::vector<Group> new_groups;     // current ids
  std::vector<Group> retired_groups; // prior ids

  bool empty() const { return changed.empty() && new_groups.empty() && retired_groups.empty(); }
};

DiffReport PartitionDiff(const Partitioning& prev, const Partitioning& curr,
                         const CorrelationResult& correlation);

}  // namespace rolegroup
