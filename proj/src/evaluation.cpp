#include "rolegroup/evaluation.hpp"

#include <algorithm>
#include <map>

#include "rolegroup/error.hpp"

namespace rolegroup {

namespace {

std::uint64_t Choose2(std::uint64_t n) { return n * (n == 0 ? 0 : n - 1) / 2; }

std::map<HostId, GroupId> Owners(const Partitioning& p, const char* which) {
  std::map<HostId, GroupId> out;
  for (const Group& g : p.groups) {
    for (const HostId& h : g.members) {
      if (!out.emplace(h, g.id).second) {
        throw ValidationError(std::string(which) + " partitioning lists host '" + h.str() +
                              "' twice");
      }
    }
  }
  return out;
}

}  // namespace

RandCounts RandFromCounts(std::uint64_t ss, std::uint64_t sd, std::uint64_t ds, std::uint64_t dd) {
  RandCounts c{ss, sd, ds, dd, 1.0};
  if (c.total() > 0) c.r = static_cast<double>(ss + dd) / static_cast<double>(c.total());
  return c;
}

RandCounts RandStatistic(const Partitioning& p, const Partitioning& p_star) {
  const auto in_p = Owners(p, "computed");
  const auto in_star = Owners(p_star, "reference");

  std::vector<std::string> only_p;
  std::vector<std::string> only_star;
  for (const auto& [h, g] : in_p) {
    if (!in_star.contains(h)) only_p.push_back(h.str());
  }
  for (const auto& [h, g] : in_star) {
    if (!in_p.contains(h)) only_star.push_back(h.str());
  }
  if (!only_p.empty() || !only_star.empty()) {
    std::string msg = "partitionings cover different hosts;";
    auto list = [&msg](const char* label, const std::vector<std::string>& hosts) {
      if (hosts.empty()) return;
      constexpr std::size_t kShown = 20;
      msg += std::string(" ") + label + " (" + std::to_string(hosts.size()) + "):";
      for (std::size_t i = 0; i < hosts.size() && i < kShown; ++i) msg += " " + hosts[i];
      if (hosts.size() > kShown) msg += " ...";
      msg += ";";
    };
    list("only in computed", only_p);
    list("only in reference", only_star);
    msg.pop_back();
    throw ValidationError(msg);
  }

  // Contingency counts.
  std::map<std::pair<GroupId, GroupId>, std::uint64_t> cell;
  std::map<GroupId, std::uint64_t> star_sizes;
  std::map<GroupId, std::uint64_t> p_sizes;
  for (const auto& [h, g_star] : in_star) {
    const GroupId g_p = in_p.at(h);
    ++cell[{g_star, g_p}];
    ++star_sizes[g_star];
    ++p_sizes[g_p];
  }
  std::uint64_t ss = 0;
  for (const auto& [key, n] : cell) ss += Choose2(n);
  std::uint64_t same_star = 0;
  for (const auto& [g, n] : star_sizes) same_star += Choose2(n);
  std::uint64_t same_p = 0;
  for (const auto& [g, n] : p_sizes) same_p += Choose2(n);
  const std::uint64_t total = Choose2(in_star.size());
  const std::uint64_t sd = same_star - ss;
  const std::uint64_t ds = same_p - ss;
  return RandFromCounts(ss, sd, ds, total - ss - sd - ds);
}

DiffReport PartitionDiff(const Partitioning& prev, const Partitioning& curr,
                         const CorrelationResult& correlation) {
  DiffReport report;
  for (const auto& [current_id, match] : correlation.matches) {
    const Group* before = prev.find(match.prior);
    const Group* after = curr.find(current_id);
    if (before == nullptr || after == nullptr) {
      throw LookupError("correlation refers to a group missing from the partitionings");
    }
    GroupDiff d;
    d.prior_id = match.prior;
    d.current_id = current_id;
    d.k_before = before->k_value;
    d.k_after = after->k_value;
    auto old_members = before->members;
    auto new_members = after->members;
    std::sort(old_members.begin(), old_members.end());
    std::sort(new_members.begin(), new_members.end());
    std::set_difference(new_members.begin(), new_members.end(), old_members.begin(),
                        old_members.end(), std::back_inserter(d.added));
    std::set_difference(old_members.begin(), old_members.end(), new_members.begin(),
                        new_members.end(), std::back_inserter(d.removed));
    if (!d.added.empty() || !d.removed.empty() || d.k_before != d.k_after) {
      report.changed.push_back(std::move(d));
    }
  }
  std::sort(report.changed.begin(), report.changed.end(),
            [](const GroupDiff& a, const GroupDiff& b) { return a.prior_id < b.prior_id; });
  for (GroupId id : correlation.new_groups) {
    if (const Group* g = curr.find(id)) report.new_groups.push_back(*g);
  }
  for (GroupId id : correlation.retired_groups) {
    if (const Group* g = prev.find(id)) report.retired_groups.push_back(*g);
  }
  return report;
}

}  // namespace rolegroup
