#include "rolegroup/partitioning.hpp"

#include <algorithm>
#include <set>

#include "rolegroup/error.hpp"

namespace rolegroup {

const Group* Partitioning::find(GroupId id) const {
  auto it = std::lower_bound(groups.begin(), groups.end(), id,
                             [](const Group& g, GroupId x) { return g.id < x; });
  if (it != groups.end() && it->id == id) return &*it;
  // Tolerate unsorted input.
  for (const auto& g : groups) {
    if (g.id == id) return &g;
  }
  return nullptr;
}

std::size_t Partitioning::host_count() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.members.size();
  return n;
}

std::vector<std::vector<HostId>> Partitioning::member_sets() const {
  std::vector<std::vector<HostId>> out;
  out.reserve(groups.size());
  for (const auto& g : groups) {
    auto m = g.members;
    std::sort(m.begin(), m.end());
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GroupId> GroupAssignment(const Partitioning& p, const ConnectionSnapshot& snapshot) {
  std::vector<std::optional<GroupId>> owner(snapshot.host_count());
  std::set<GroupId> seen;
  for (const auto& g : p.groups) {
    if (!seen.insert(g.id).second) {
      throw ValidationError("duplicate group id " + std::to_string(g.id.value));
    }
    if (g.members.empty()) {
      throw ValidationError("group " + std::to_string(g.id.value) + " has no members");
    }
    for (const HostId& h : g.members) {
      auto i = snapshot.find(h);
      if (!i) {
        throw ValidationError("group " + std::to_string(g.id.value) + " lists unknown host '" +
                              h.str() + "'");
      }
      if (owner[*i]) {
        throw ValidationError("host '" + h.str() + "' belongs to groups " +
                              std::to_string(owner[*i]->value) + " and " +
                              std::to_string(g.id.value));
      }
      owner[*i] = g.id;
    }
  }
  std::vector<GroupId> out;
  out.reserve(owner.size());
  for (HostIndex i = 0; i < owner.size(); ++i) {
    if (!owner[i]) {
      throw ValidationError("host '" + snapshot.host(i).str() + "' is not covered by any group");
    }
    out.push_back(*owner[i]);
  }
  return out;
}

void ValidatePartitioning(const Partitioning& p, const ConnectionSnapshot& snapshot) {
  (void)GroupAssignment(p, snapshot);
}

}  // namespace rolegroup
