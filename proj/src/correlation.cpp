#include "rolegroup/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>

#include "rolegroup/error.hpp"

namespace rolegroup {

namespace {

constexpr double kSlack = 1e-9;

// A group seen through one snapshot: members present there, neighbouring
// hosts with their connection counts CP(h, G), and the external total.
struct Profile {
  GroupId id;
  std::vector<HostIndex> members;                              // sorted
  std::vector<std::pair<HostIndex, std::uint32_t>> neighbors;  // sorted by host
  std::uint64_t total = 0;

  bool empty() const { return members.empty(); }
};

Profile MakeProfile(const Group& group, const ConnectionSnapshot& snapshot) {
  Profile p;
  p.id = group.id;
  for (const HostId& h : group.members) {
    if (auto i = snapshot.find(h)) p.members.push_back(*i);
  }
  std::sort(p.members.begin(), p.members.end());
  std::map<HostIndex, std::uint32_t> counts;
  for (HostIndex m : p.members) {
    for (HostIndex n : snapshot.neighbors(m)) {
      if (std::binary_search(p.members.begin(), p.members.end(), n)) continue;
      ++counts[n];
      ++p.total;
    }
  }
  p.neighbors.assign(counts.begin(), counts.end());
  return p;
}

// Translation of prior-snapshot indices into current-snapshot indices.
std::vector<std::optional<HostIndex>> Translate(const ConnectionSnapshot& prev,
                                                const ConnectionSnapshot& curr) {
  std::vector<std::optional<HostIndex>> out(prev.host_count());
  for (HostIndex i = 0; i < prev.host_count(); ++i) out[i] = curr.find(prev.host(i));
  return out;
}

std::vector<bool> Membership(std::span<const HostId> hosts, const ConnectionSnapshot& snapshot) {
  std::vector<bool> out(snapshot.host_count(), false);
  for (const HostId& h : hosts) {
    if (auto i = snapshot.find(h)) out[*i] = true;
  }
  return out;
}

struct PairingContext {
  const ConnectionSnapshot& prev;
  const ConnectionSnapshot& curr;
  const std::vector<std::optional<HostIndex>>& prev_to_curr;
  const std::vector<bool>& same_prev;
  const std::vector<bool>& same_curr;
  double t_hi;
};

// (current index, prior index, CP current, CP prior)
struct IndexPair {
  HostIndex current;
  HostIndex prior;
  std::uint32_t cp_current;
  std::uint32_t cp_prior;
};

std::vector<IndexPair> PairProfiles(const Profile& t, const Profile& p, const PairingContext& ctx) {
  std::vector<IndexPair> pairs;
  std::vector<bool> used_t(t.neighbors.size(), false);
  std::vector<bool> used_p(p.neighbors.size(), false);

  for (std::size_t j = 0; j < p.neighbors.size(); ++j) {
    const auto [hp, cpp] = p.neighbors[j];
    const auto hc = ctx.prev_to_curr[hp];
    if (!hc || !ctx.same_prev[hp] || !ctx.same_curr[*hc]) continue;
    auto it = std::lower_bound(t.neighbors.begin(), t.neighbors.end(), *hc,
                               [](const auto& e, HostIndex x) { return e.first < x; });
    if (it == t.neighbors.end() || it->first != *hc) continue;
    const auto i = static_cast<std::size_t>(it - t.neighbors.begin());
    used_t[i] = used_p[j] = true;
    pairs.push_back(IndexPair{*hc, hp, it->second, cpp});
  }

  for (std::size_t i = 0; i < t.neighbors.size(); ++i) {
    const auto [hc, cpc] = t.neighbors[i];
    if (used_t[i] || ctx.same_curr[hc]) continue;
    const double size_t_ = static_cast<double>(ctx.curr.degree(hc));
    std::optional<std::size_t> best;
    double best_diff = 0.0;
    for (std::size_t j = 0; j < p.neighbors.size(); ++j) {
      const HostIndex hp = p.neighbors[j].first;
      if (used_p[j] || ctx.same_prev[hp]) continue;
      const double diff = std::fabs(static_cast<double>(ctx.prev.degree(hp)) - size_t_);
      if (diff > ctx.t_hi * size_t_ + kSlack) continue;
      // Prior neighbours are visited in token order, so a strict improvement
      // keeps the smaller token on ties.
      if (!best || diff < best_diff) {
        best = j;
        best_diff = diff;
      }
    }
    if (!best) continue;
    used_p[*best] = true;
    used_t[i] = true;
    pairs.push_back(IndexPair{hc, p.neighbors[*best].first, cpc, p.neighbors[*best].second});
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const IndexPair& a, const IndexPair& b) { return a.current < b.current; });
  return pairs;
}

// Exact ratio N / D with
//   N = sum over pairs of min(cp_t * |G_p|, cp_p * |G_t|)
//   D = max(T_t * |G_p|, T_p * |G_t|)
double Score(const Profile& t, const Profile& p, std::span<const IndexPair> pairs) {
  if (t.total == 0 || p.total == 0 || t.empty() || p.empty()) return 0.0;
  const std::uint64_t size_t_ = t.members.size();
  const std::uint64_t size_p = p.members.size();
  std::uint64_t numerator = 0;
  for (const auto& pr : pairs) {
    numerator += std::min<std::uint64_t>(pr.cp_current * size_p, pr.cp_prior * size_t_);
  }
  const std::uint64_t denominator = std::max(t.total * size_p, p.total * size_t_);
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

double UpperBound(const Profile& t, const Profile& p) {
  if (t.total == 0 || p.total == 0 || t.empty() || p.empty()) return 0.0;
  const double a = static_cast<double>(t.total * p.members.size());
  const double b = static_cast<double>(p.total * t.members.size());
  return std::min(a, b) / std::max(a, b);
}

double AverageConnections(const Profile& p, const ConnectionSnapshot& snapshot) {
  if (p.empty()) return 0.0;
  std::uint64_t sum = 0;
  for (HostIndex m : p.members) sum += snapshot.degree(m);
  return static_cast<double>(sum) / static_cast<double>(p.members.size());
}

std::size_t Overlap(const Profile& t, const Profile& p,
                    const std::vector<std::optional<HostIndex>>& prev_to_curr) {
  std::size_t n = 0;
  for (HostIndex hp : p.members) {
    if (auto hc = prev_to_curr[hp];
        hc && std::binary_search(t.members.begin(), t.members.end(), *hc)) {
      ++n;
    }
  }
  return n;
}

// Neighbour-pattern similarity of a current and a prior group, comparing only
// neighbour groups already known to correspond.
double PatternSimilarity(GroupId gt, GroupId gp, const GroupGraph& curr, const GroupGraph& prev,
                         const std::map<GroupId, GroupId>& mapping,
                         SimilarityNormalization normalization) {
  const double size_t_ = static_cast<double>(curr.size(gt));
  const double size_p = static_cast<double>(prev.size(gp));
  const double ct = static_cast<double>(curr.external_connections(gt)) / size_t_;
  const double cp = static_cast<double>(prev.external_connections(gp)) / size_p;
  if (ct == 0.0 || cp == 0.0) return 0.0;
  double norm_t = size_t_;
  double norm_p = size_p;
  if (normalization == SimilarityNormalization::kNeighborHostCount) {
    norm_t = static_cast<double>(curr.neighbor_host_count(gt));
    norm_p = static_cast<double>(prev.neighbor_host_count(gp));
  }
  const auto prior_neighbors = prev.neighbors(gp);
  double s = 0.0;
  for (GroupId other : curr.neighbors(gt)) {
    auto it = mapping.find(other);
    if (it == mapping.end() || it->second == gp) continue;
    if (!std::binary_search(prior_neighbors.begin(), prior_neighbors.end(), it->second)) continue;
    s += std::min(static_cast<double>(curr.cp(other, gt)) / norm_t,
                  static_cast<double>(prev.cp(it->second, gp)) / norm_p);
  }
  s = 0.5 * (s / ct + s / cp);
  return std::clamp(s * 100.0, 0.0, 100.0);
}

}  // namespace

void CorrelationConfig::Validate() const {
  if (!(t_hi >= 0.0 && t_hi <= 1.0)) {
    throw ValidationError("t_hi must lie in [0,1], got " + std::to_string(t_hi));
  }
  if (!(sim_threshold >= 0.0 && sim_threshold <= 1.0)) {
    throw ValidationError("sim_threshold must lie in [0,1], got " + std::to_string(sim_threshold));
  }
  if (!(step2_threshold >= 0.0 && step2_threshold <= 100.0)) {
    throw ValidationError("step2_threshold must lie in [0,100], got " +
                          std::to_string(step2_threshold));
  }
}

std::map<GroupId, GroupId> CorrelationResult::mapping() const {
  std::map<GroupId, GroupId> out;
  for (const auto& [current, match] : matches) out.emplace(current, match.prior);
  return out;
}

std::pair<ConnectionSnapshot, ConnectionSnapshot> AlignSnapshots(const ConnectionSnapshot& prev,
                                                                 const ConnectionSnapshot& curr) {
  std::vector<HostId> common;
  std::set_intersection(prev.hosts().begin(), prev.hosts().end(), curr.hosts().begin(),
                        curr.hosts().end(), std::back_inserter(common));
  if (common.empty()) {
    throw AlignmentError("snapshots '" + prev.label() + "' and '" + curr.label() +
                         "' share no hosts");
  }
  return {prev.Restrict(common), curr.Restrict(common)};
}

std::vector<HostId> ComputeHSame(const ConnectionSnapshot& prev, const ConnectionSnapshot& curr) {
  std::vector<HostId> out;
  for (HostIndex i = 0; i < curr.host_count(); ++i) {
    const HostId& h = curr.host(i);
    auto j = prev.find(h);
    if (!j) continue;
    auto nc = curr.neighbors(i);
    auto np = prev.neighbors(*j);
    if (nc.size() != np.size()) continue;
    bool equal = true;
    for (std::size_t k = 0; k < nc.size() && equal; ++k) {
      equal = curr.host(nc[k]) == prev.host(np[k]);
    }
    if (equal) out.push_back(h);
  }
  return out;
}

std::vector<NeighborPair> PairNeighbors(const Group& current, const Group& prior,
                                        std::span<const HostId> h_same,
                                        const ConnectionSnapshot& prev,
                                        const ConnectionSnapshot& curr, double t_hi) {
  const auto prev_to_curr = Translate(prev, curr);
  const auto same_prev = Membership(h_same, prev);
  const auto same_curr = Membership(h_same, curr);
  const PairingContext ctx{prev, curr, prev_to_curr, same_prev, same_curr, t_hi};
  std::vector<NeighborPair> out;
  for (const auto& pr :
       PairProfiles(MakeProfile(current, curr), MakeProfile(prior, prev), ctx)) {
    out.emplace_back(curr.host(pr.current), prev.host(pr.prior));
  }
  return out;
}

double TimeVaryingSimilarity(const Group& current, const Group& prior,
                             std::span<const NeighborPair> pairs, const ConnectionSnapshot& prev,
                             const ConnectionSnapshot& curr) {
  const Profile t = MakeProfile(current, curr);
  const Profile p = MakeProfile(prior, prev);
  auto cp_of = [](const Profile& profile, std::optional<HostIndex> h) -> std::uint32_t {
    if (!h) return 0;
    auto it = std::lower_bound(profile.neighbors.begin(), profile.neighbors.end(), *h,
                               [](const auto& e, HostIndex x) { return e.first < x; });
    return (it != profile.neighbors.end() && it->first == *h) ? it->second : 0;
  };
  std::vector<IndexPair> indexed;
  for (const auto& [hc, hp] : pairs) {
    auto ic = curr.find(hc);
    auto ip = prev.find(hp);
    indexed.push_back(IndexPair{ic.value_or(0), ip.value_or(0), cp_of(t, ic), cp_of(p, ip)});
  }
  return Score(t, p, indexed);
}

CorrelationResult Correlate(const RunView& prev_run, const RunView& curr_run,
                            const CorrelationConfig& config) {
  config.Validate();
  ValidatePartitioning(prev_run.partitioning, prev_run.snapshot);
  ValidatePartitioning(curr_run.partitioning, curr_run.snapshot);

  auto [prev, curr] = AlignSnapshots(prev_run.snapshot, curr_run.snapshot);
  CorrelationResult result;
  result.h_same = ComputeHSame(prev, curr);

  const auto prev_to_curr = Translate(prev, curr);
  const auto same_prev = Membership(result.h_same, prev);
  const auto same_curr = Membership(result.h_same, curr);
  const PairingContext ctx{prev, curr, prev_to_curr, same_prev, same_curr, config.t_hi};

  std::vector<Profile> prior_profiles;
  for (const Group& g : prev_run.partitioning.groups) prior_profiles.push_back(MakeProfile(g, prev));
  std::vector<Profile> current_profiles;
  for (const Group& g : curr_run.partitioning.groups) current_profiles.push_back(MakeProfile(g, curr));
  std::sort(prior_profiles.begin(), prior_profiles.end(),
            [](const Profile& a, const Profile& b) { return a.id < b.id; });
  std::sort(current_profiles.begin(), current_profiles.end(),
            [](const Profile& a, const Profile& b) { return a.id < b.id; });

  // Step 1: each current group proposes its strongest prior group.
  struct Proposal {
    GroupId current;
    GroupId prior;
    double score;
  };
  std::vector<Proposal> proposals;
  for (const Profile& t : current_profiles) {
    if (t.empty() || t.total == 0) continue;
    const Profile* best = nullptr;
    double best_score = -1.0;
    std::size_t best_overlap = 0;
    for (const Profile& p : prior_profiles) {
      if (p.empty()) continue;
      if (UpperBound(t, p) + kSlack < config.sim_threshold) continue;
      const auto pairs = PairProfiles(t, p, ctx);
      const double score = Score(t, p, pairs);
      const std::size_t overlap = Overlap(t, p, prev_to_curr);
      if (score > best_score || (score == best_score && overlap > best_overlap)) {
        best = &p;
        best_score = score;
        best_overlap = overlap;
      }
    }
    if (best == nullptr || best_score + kSlack < config.sim_threshold) continue;
    const double at = AverageConnections(t, curr);
    const double ap = AverageConnections(*best, prev);
    if (std::fabs(at - ap) > config.t_hi * ap + kSlack) continue;
    proposals.push_back(Proposal{t.id, best->id, best_score});
  }
  std::sort(proposals.begin(), proposals.end(), [](const Proposal& a, const Proposal& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.current < b.current;
  });
  std::set<GroupId> claimed;
  for (const auto& pr : proposals) {
    if (!claimed.insert(pr.prior).second) continue;
    result.matches.emplace(pr.current, Match{pr.prior, MatchStep::kTimeVarying, pr.score});
  }

  // Step 2: remaining pairs compared through correlated neighbour groups, on
  // the full snapshots. Repeats while new matches appear, since each match
  // adds comparable neighbours.
  const GroupGraph curr_graph(curr_run.partitioning, curr_run.snapshot);
  const GroupGraph prev_graph(prev_run.partitioning, prev_run.snapshot);
  auto unchanged_members = [&](const Profile& t, const Profile& p) {
    if (t.empty() || t.members.size() != p.members.size()) return false;
    if (Overlap(t, p, prev_to_curr) != p.members.size()) return false;
    return std::all_of(p.members.begin(), p.members.end(),
                       [&](HostIndex h) { return same_prev[h]; });
  };
  while (true) {
    std::map<GroupId, GroupId> mapping = result.mapping();
    struct Candidate {
      double score;
      GroupId current;
      GroupId prior;
    };
    std::vector<Candidate> candidates;
    for (const Profile& t : current_profiles) {
      if (result.matches.contains(t.id)) continue;
      for (const Profile& p : prior_profiles) {
        if (claimed.contains(p.id)) continue;
        if (unchanged_members(t, p)) {
          candidates.push_back(Candidate{100.0, t.id, p.id});
          continue;
        }
        const double s = PatternSimilarity(t.id, p.id, curr_graph, prev_graph, mapping,
                                           config.normalization);
        if (s > 0.0 && s + kSlack >= config.step2_threshold) {
          candidates.push_back(Candidate{s, t.id, p.id});
        }
      }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      if (a.score != b.score) return a.score > b.score;
      if (a.current != b.current) return a.current < b.current;
      return a.prior < b.prior;
    });
    bool progress = false;
    for (const auto& c : candidates) {
      if (result.matches.contains(c.current) || claimed.contains(c.prior)) continue;
      claimed.insert(c.prior);
      result.matches.emplace(c.current, Match{c.prior, MatchStep::kNeighborPattern, c.score});
      progress = true;
    }
    if (!progress) break;
  }
  for (const Profile& t : current_profiles) {
    if (!result.matches.contains(t.id)) result.new_groups.push_back(t.id);
  }
  for (const Profile& p : prior_profiles) {
    if (!claimed.contains(p.id)) result.retired_groups.push_back(p.id);
  }
  return result;
}

Partitioning ApplyCorrelation(const Partitioning& curr, const Partitioning& prev,
                              const CorrelationResult& result) {
  std::uint32_t next = 0;
  for (const Group& g : prev.groups) next = std::max(next, g.id.value + 1);
  Partitioning out = curr;
  std::sort(out.groups.begin(), out.groups.end(),
            [](const Group& a, const Group& b) { return a.id < b.id; });
  for (Group& g : out.groups) {
    auto it = result.matches.find(g.id);
    g.id = it != result.matches.end() ? it->second.prior : GroupId{next++};
  }
  std::sort(out.groups.begin(), out.groups.end(),
            [](const Group& a, const Group& b) { return a.id < b.id; });
  return out;
}

}  // namespace rolegroup
