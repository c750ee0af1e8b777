#include "rolegroup/merging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>

#include "rolegroup/error.hpp"

namespace rolegroup {

namespace {

constexpr double kSlack = 1e-9;

bool AtLeast(double value, double threshold) { return value >= threshold - kSlack; }

}  // namespace

void MergeConfig::Validate() const {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw ValidationError("beta must lie in [0,1], got " + std::to_string(beta));
  }
  if (!(s_lo >= 0.0 && s_lo < s_hi && s_hi <= 100.0)) {
    throw ValidationError("similarity thresholds must satisfy 0 <= s_lo < s_hi <= 100 (s_lo=" +
                          std::to_string(s_lo) + ", s_hi=" + std::to_string(s_hi) + ")");
  }
}

GroupGraph::GroupGraph(const Partitioning& partitioning, const ConnectionSnapshot& snapshot)
    : partitioning_(partitioning) {
  std::sort(partitioning_.groups.begin(), partitioning_.groups.end(),
            [](const Group& a, const Group& b) { return a.id < b.id; });
  owner_ = GroupAssignment(partitioning_, snapshot);

  stats_.resize(partitioning_.groups.size());
  for (std::size_t i = 0; i < stats_.size(); ++i) stats_[i].id = partitioning_.groups[i].id;
  for (std::size_t i = 0; i < stats_.size(); ++i) Recount(i, snapshot);
}

void GroupGraph::Recount(std::size_t s, const ConnectionSnapshot& snapshot) {
  const Group& g = partitioning_.groups[s];
  Stats& st = stats_[s];
  st = Stats{};
  st.id = g.id;
  st.size = g.members.size();
  st.k_value = g.k_value;
  st.min_degree = std::numeric_limits<std::uint32_t>::max();
  std::vector<HostIndex> outside;
  std::map<std::size_t, std::uint64_t> cp;
  for (const HostId& id : g.members) {
    const HostIndex h = snapshot.index_of(id);
    const auto deg = static_cast<std::uint32_t>(snapshot.degree(h));
    st.degree_sum += deg;
    st.min_degree = std::min(st.min_degree, deg);
    for (HostIndex n : snapshot.neighbors(h)) {
      if (owner_[n] == g.id) {
        if (h < n) ++st.internal;
        continue;
      }
      ++st.external;
      outside.push_back(n);
      ++cp[slot(owner_[n])];
    }
  }
  std::sort(outside.begin(), outside.end());
  st.neighbor_hosts =
      static_cast<std::size_t>(std::unique(outside.begin(), outside.end()) - outside.begin());
  st.cp.assign(cp.begin(), cp.end());
}

void GroupGraph::Merge(GroupId kept, GroupId absorbed, std::uint32_t k_value,
                       const ConnectionSnapshot& snapshot) {
  const std::size_t ks = slot(kept);
  const std::size_t as = slot(absorbed);
  auto entry = [](auto& list, std::size_t target) {
    return std::lower_bound(list.begin(), list.end(), target,
                            [](const auto& e, std::size_t x) { return e.first < x; });
  };
  for (const auto& [n, count] : stats_[as].cp) {
    if (n == ks) continue;
    auto& list = stats_[n].cp;
    list.erase(entry(list, as));
    auto it = entry(list, ks);
    if (it != list.end() && it->first == ks) {
      it->second += count;
    } else {
      list.insert(it, {ks, count});
    }
  }
  stats_.erase(stats_.begin() + static_cast<std::ptrdiff_t>(as));
  for (auto& st : stats_) {
    for (auto& e : st.cp) {
      if (e.first > as) --e.first;
    }
  }

  auto& groups = partitioning_.groups;
  Group& into = groups[ks];
  Group& from = groups[as];
  for (const HostId& h : from.members) owner_[snapshot.index_of(h)] = kept;
  into.members.insert(into.members.end(), from.members.begin(), from.members.end());
  std::sort(into.members.begin(), into.members.end());
  into.k_value = k_value;
  groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(as));
  Recount(slot(kept), snapshot);
}

std::size_t GroupGraph::slot(GroupId g) const {
  auto it = std::lower_bound(stats_.begin(), stats_.end(), g,
                             [](const Stats& s, GroupId x) { return s.id < x; });
  if (it == stats_.end() || it->id != g) {
    throw LookupError("unknown group " + std::to_string(g.value));
  }
  return static_cast<std::size_t>(it - stats_.begin());
}

std::vector<GroupId> GroupGraph::neighbors(GroupId g) const {
  std::vector<GroupId> out;
  for (const auto& [s, count] : stats_[slot(g)].cp) out.push_back(stats_[s].id);
  return out;
}

std::uint64_t GroupGraph::cp(GroupId a, GroupId b) const {
  const auto& list = stats_[slot(a)].cp;
  const std::size_t target = slot(b);
  auto it = std::lower_bound(list.begin(), list.end(), target,
                             [](const auto& entry, std::size_t x) { return entry.first < x; });
  return (it != list.end() && it->first == target) ? it->second : 0;
}

std::uint64_t GroupGraph::external_connections(GroupId g) const { return stats_[slot(g)].external; }
std::uint64_t GroupGraph::internal_connections(GroupId g) const { return stats_[slot(g)].internal; }
std::size_t GroupGraph::neighbor_host_count(GroupId g) const { return stats_[slot(g)].neighbor_hosts; }
std::size_t GroupGraph::size(GroupId g) const { return stats_[slot(g)].size; }
std::uint64_t GroupGraph::degree_sum(GroupId g) const { return stats_[slot(g)].degree_sum; }
std::uint32_t GroupGraph::k_value(GroupId g) const { return stats_[slot(g)].k_value; }
std::uint32_t GroupGraph::min_member_degree(GroupId g) const { return stats_[slot(g)].min_degree; }

double GroupAvgConnections(const Group& group, const ConnectionSnapshot& snapshot) {
  if (group.members.empty()) throw UndefinedAverageError("average connections of an empty group");
  std::uint64_t total = 0;
  for (const HostId& h : group.members) total += snapshot.degree(snapshot.index_of(h));
  return static_cast<double>(total) / static_cast<double>(group.members.size());
}

bool MeetsConnectionReq(double a1, double a2, double beta) {
  return std::fabs(a1 - a2) <= beta * std::max(a1, a2) + kSlack;
}

bool MeetsConnectionReq(const Group& g1, const Group& g2, const ConnectionSnapshot& snapshot,
                        double beta) {
  return MeetsConnectionReq(GroupAvgConnections(g1, snapshot), GroupAvgConnections(g2, snapshot),
                            beta);
}

double GroupSimilarity(GroupId g1, GroupId g2, const GroupGraph& graph,
                       SimilarityNormalization normalization) {
  if (g1 == g2) throw ValidationError("group similarity of a group with itself");
  const double size1 = static_cast<double>(graph.size(g1));
  const double size2 = static_cast<double>(graph.size(g2));
  const double c1 = static_cast<double>(graph.external_connections(g1)) / size1;
  const double c2 = static_cast<double>(graph.external_connections(g2)) / size2;
  if (c1 == 0.0 || c2 == 0.0) return 0.0;

  double norm1 = size1;
  double norm2 = size2;
  if (normalization == SimilarityNormalization::kNeighborHostCount) {
    norm1 = static_cast<double>(graph.neighbor_host_count(g1));
    norm2 = static_cast<double>(graph.neighbor_host_count(g2));
  }

  const auto n1 = graph.neighbors(g1);
  const auto n2 = graph.neighbors(g2);
  std::vector<GroupId> common;
  std::set_intersection(n1.begin(), n1.end(), n2.begin(), n2.end(), std::back_inserter(common));

  double s = 0.0;
  for (GroupId other : common) {
    if (other == g1 || other == g2) continue;
    s += std::min(static_cast<double>(graph.cp(other, g1)) / norm1,
                  static_cast<double>(graph.cp(other, g2)) / norm2);
  }
  s = 0.5 * (s / c1 + s / c2);
  return std::clamp(s * 100.0, 0.0, 100.0);
}

bool MeetsSimilarityReq(std::uint32_t kmax, double similarity, const MergeConfig& config) {
  if (kmax >= config.k_hi) return AtLeast(similarity, config.s_hi);
  return AtLeast(similarity, config.s_lo);
}

bool MeetsSimilarityReq(GroupId g1, GroupId g2, const GroupGraph& graph, const MergeConfig& config) {
  const std::uint32_t kmax = std::max(graph.k_value(g1), graph.k_value(g2));
  return MeetsSimilarityReq(kmax, GroupSimilarity(g1, g2, graph, config.normalization), config);
}

namespace {

struct Candidate {
  double similarity;
  GroupId low;
  GroupId high;

  // Highest similarity first; ties to the smallest (low, high).
  friend bool operator<(const Candidate& x, const Candidate& y) {
    if (x.similarity != y.similarity) return x.similarity > y.similarity;
    return std::pair(x.low, x.high) < std::pair(y.low, y.high);
  }
};

bool AllPairs(const MergeConfig& config) { return std::min(config.s_lo, config.s_hi) <= kSlack; }

// Qualifying pairs ordered by merge priority, with per-pair lookup.
class CandidateQueue {
 public:
  CandidateQueue(const MergeConfig& config) : config_(config) {}

  void Evaluate(GroupId a, GroupId b, const GroupGraph& graph) {
    if (b < a) std::swap(a, b);
    const double a1 = static_cast<double>(graph.degree_sum(a)) / static_cast<double>(graph.size(a));
    const double a2 = static_cast<double>(graph.degree_sum(b)) / static_cast<double>(graph.size(b));
    if (!MeetsConnectionReq(a1, a2, config_.beta)) return;
    const double s = GroupSimilarity(a, b, graph, config_.normalization);
    const std::uint32_t kmax = std::max(graph.k_value(a), graph.k_value(b));
    if (!MeetsSimilarityReq(kmax, s, config_)) return;
    const Candidate c{s, a, b};
    queue_.insert(c);
    by_pair_.emplace(std::pair(a, b), c);
    partners_[a].insert(b);
    partners_[b].insert(a);
  }

  void Forget(GroupId a, GroupId b) {
    if (b < a) std::swap(a, b);
    auto it = by_pair_.find(std::pair(a, b));
    if (it == by_pair_.end()) return;
    queue_.erase(it->second);
    by_pair_.erase(it);
    partners_[a].erase(b);
    partners_[b].erase(a);
  }

  // Drops every pair touching `g`.
  void ForgetGroup(GroupId g) {
    auto it = partners_.find(g);
    if (it == partners_.end()) return;
    const std::set<GroupId> others = std::move(it->second);
    partners_.erase(it);
    for (GroupId other : others) {
      const auto key = g < other ? std::pair(g, other) : std::pair(other, g);
      auto found = by_pair_.find(key);
      queue_.erase(found->second);
      by_pair_.erase(found);
      partners_[other].erase(g);
    }
  }

  std::optional<Candidate> best() const {
    if (queue_.empty()) return std::nullopt;
    return *queue_.begin();
  }

 private:
  const MergeConfig& config_;
  std::set<Candidate> queue_;
  std::map<std::pair<GroupId, GroupId>, Candidate> by_pair_;
  std::map<GroupId, std::set<GroupId>> partners_;
};

// Groups sharing at least one neighbour group with `g`.
std::vector<GroupId> TwoHop(GroupId g, const GroupGraph& graph) {
  std::vector<GroupId> out;
  for (GroupId mid : graph.neighbors(g)) {
    for (GroupId other : graph.neighbors(mid)) {
      if (other != g) out.push_back(other);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

// Merging A and B into A' only changes the scores of pairs that involve A' or
// whose members both neighbour A'; every other pair keeps its common
// neighbour groups, their connection counts and its own totals. Only those
// pairs are re-scored after a merge.
MergeResult MergePassWithLog(const Partitioning& partitioning, const ConnectionSnapshot& snapshot,
                             const MergeConfig& config) {
  config.Validate();
  MergeResult result;
  result.partitioning = partitioning;
  std::sort(result.partitioning.groups.begin(), result.partitioning.groups.end(),
            [](const Group& a, const Group& b) { return a.id < b.id; });
  if (result.partitioning.groups.size() < 2) return result;

  CandidateQueue queue(config);
  GroupGraph graph(result.partitioning, snapshot);
  for (const Group& g : graph.partitioning().groups) {
    if (AllPairs(config)) {
      for (const Group& other : graph.partitioning().groups) {
        if (g.id < other.id) queue.Evaluate(g.id, other.id, graph);
      }
    } else {
      for (GroupId other : TwoHop(g.id, graph)) {
        if (g.id < other) queue.Evaluate(g.id, other, graph);
      }
    }
  }

  while (auto best = queue.best()) {
    const GroupId merged = best->low;
    const std::uint32_t min_degree =
        std::min(graph.min_member_degree(best->low), graph.min_member_degree(best->high));
    graph.Merge(best->low, best->high, min_degree, snapshot);
    result.steps.push_back(MergeStep{best->low, best->high, best->similarity, min_degree});
    if (graph.group_count() < 2) break;

    queue.ForgetGroup(best->low);
    queue.ForgetGroup(best->high);
    const auto around = graph.neighbors(merged);
    for (std::size_t i = 0; i < around.size(); ++i) {
      for (std::size_t j = i + 1; j < around.size(); ++j) {
        queue.Forget(around[i], around[j]);
        queue.Evaluate(around[i], around[j], graph);
      }
    }
    if (AllPairs(config)) {
      for (const Group& other : graph.partitioning().groups) {
        if (other.id != merged) queue.Evaluate(merged, other.id, graph);
      }
    } else {
      for (GroupId other : TwoHop(merged, graph)) queue.Evaluate(merged, other, graph);
    }
  }
  result.partitioning = graph.partitioning();
  return result;
}

Partitioning MergePass(const Partitioning& partitioning, const ConnectionSnapshot& snapshot,
                       const MergeConfig& config) {
  return MergePassWithLog(partitioning, snapshot, config).partitioning;
}

}  // namespace rolegroup
