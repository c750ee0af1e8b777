#include "rolegroup/formation.hpp"

#include <algorithm>
#include <numeric>

#include "rolegroup/error.hpp"

namespace rolegroup {

void FormationConfig::Validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ValidationError("alpha must lie in [0,1], got " + std::to_string(alpha));
  }
}

std::vector<std::vector<HostIndex>> ResolveBccMembership(
    const std::vector<std::vector<HostIndex>>& components) {
  std::vector<std::vector<HostIndex>> sorted = components;
  for (auto& c : sorted) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  // Preference order: larger first, then lexicographically smaller.
  std::vector<std::size_t> order(sorted.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (sorted[x].size() != sorted[y].size()) return sorted[x].size() > sorted[y].size();
    return sorted[x] < sorted[y];
  });

  std::vector<std::vector<HostIndex>> out;
  std::vector<HostIndex> claimed;  // sorted
  std::vector<std::vector<HostIndex>> kept(sorted.size());
  // Assignment looks only at original sizes, so every vertex is decided by
  // the most preferred component containing it.
  for (std::size_t idx : order) {
    for (HostIndex h : sorted[idx]) {
      auto it = std::lower_bound(claimed.begin(), claimed.end(), h);
      if (it != claimed.end() && *it == h) continue;
      claimed.insert(it, h);
      kept[idx].push_back(h);
    }
  }
  for (auto& members : kept) {
    if (members.size() >= 2) {
      std::sort(members.begin(), members.end());
      out.push_back(std::move(members));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

class Former {
 public:
  Former(const ConnectionSnapshot& snapshot, const FormationConfig& config)
      : snapshot_(snapshot), config_(config), conn_(snapshot), index_(snapshot) {}

  FormationResult Run() {
    const auto k_max = static_cast<std::uint32_t>(snapshot_.max_degree());
    for (std::uint32_t k = k_max; k >= 1; --k) {
      auto bucket = index_.with_weight(k);
      active_.insert(active_.end(), bucket.begin(), bucket.end());
      while (true) {
        const std::size_t before = next_id_;
        ExtractComponents(k);
        Bootstrap(k);
        if (next_id_ == before) break;
      }
    }
    for (HostIndex h : conn_.ungrouped()) {
      Create(0, FormationStep::kSweep, {h});
    }
    result_.partitioning.snapshot_label = snapshot_.label();
    std::sort(result_.partitioning.groups.begin(), result_.partitioning.groups.end(),
              [](const Group& a, const Group& b) { return a.id < b.id; });
    return std::move(result_);
  }

 private:
  void ExtractComponents(std::uint32_t k) {
    std::erase_if(active_, [&](const WeightedEdge& e) {
      return conn_.is_grouped(e.a) || conn_.is_grouped(e.b);
    });
    if (active_.empty()) return;
    NeighborhoodGraph graph;
    graph.k = k;
    std::sort(active_.begin(), active_.end());
    for (const auto& e : active_) {
      graph.nodes.push_back(e.a);
      graph.nodes.push_back(e.b);
    }
    std::sort(graph.nodes.begin(), graph.nodes.end());
    graph.nodes.erase(std::unique(graph.nodes.begin(), graph.nodes.end()), graph.nodes.end());
    graph.edges = active_;

    auto groups = ResolveBccMembership(FindBiconnectedComponents(graph));
    for (auto& members : groups) Create(k, FormationStep::kBiconnected, std::move(members));
    ++round_;
  }

  void Bootstrap(std::uint32_t k) {
    constexpr double kSlack = 1e-9;
    for (HostIndex h : conn_.ungrouped()) {
      const double bound = config_.alpha * static_cast<double>(snapshot_.degree(h));
      if (bound - static_cast<double>(k) > kSlack) {
        Create(k, FormationStep::kBootstrap, {h});
      }
    }
  }

  void Create(std::uint32_t k, FormationStep step, std::vector<HostIndex> members) {
    const GroupId id{next_id_++};
    conn_.Absorb(members, id);
    Group g;
    g.id = id;
    g.k_value = k;
    for (HostIndex h : members) g.members.push_back(snapshot_.host(h));
    result_.log.push_back(FormationEvent{k, round_, id, step, g.members});
    result_.partitioning.groups.push_back(std::move(g));
  }

  const ConnectionSnapshot& snapshot_;
  const FormationConfig& config_;
  ConnGraph conn_;
  CommonNeighborIndex index_;
  std::vector<WeightedEdge> active_;
  std::uint32_t next_id_ = 0;
  std::uint32_t round_ = 0;
  FormationResult result_;
};

}  // namespace

FormationResult FormGroupsWithLog(const ConnectionSnapshot& snapshot,
                                  const FormationConfig& config) {
  config.Validate();
  return Former(snapshot, config).Run();
}

Partitioning FormGroups(const ConnectionSnapshot& snapshot, const FormationConfig& config) {
  return FormGroupsWithLog(snapshot, config).partitioning;
}

}  // namespace rolegroup
