#include "rolegroup/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <string>
#include <type_traits>

#include "rolegroup/error.hpp"

namespace rolegroup {

namespace {

// Platform-independent draws on top of mt19937_64, whose output sequence is
// fixed by the standard (the std distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n).
  std::uint64_t Below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  double Unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool Chance(double p) { return Unit() < p; }

 private:
  std::mt19937_64 engine_;
};

std::string Name(const char* pattern, std::uint32_t a, std::uint32_t b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

void SortGroups(Partitioning& p) {
  for (auto& g : p.groups) std::sort(g.members.begin(), g.members.end());
}

}  // namespace

SynthNetwork GenerateFigure1(const Figure1Spec& spec) {
  if (spec.sales == 0 || spec.eng == 0) {
    throw ValidationError("figure1 needs at least one sales and one engineering host");
  }
  const HostId mail("Mail");
  const HostId web("Web");
  const HostId sales_db("SalesDatabase");
  const HostId src("SourceRevisionControl");
  std::vector<std::pair<HostId, HostId>> pairs;
  Group sales{GroupId{1}, 0, {}};
  Group eng{GroupId{2}, 0, {}};
  for (std::uint32_t i = 1; i <= spec.sales; ++i) {
    HostId h("Sales-" + std::to_string(i));
    pairs.emplace_back(h, mail);
    pairs.emplace_back(h, web);
    pairs.emplace_back(h, sales_db);
    sales.members.push_back(h);
  }
  for (std::uint32_t j = 1; j <= spec.eng; ++j) {
    HostId h("Eng-" + std::to_string(j));
    pairs.emplace_back(h, mail);
    pairs.emplace_back(h, web);
    pairs.emplace_back(h, src);
    eng.members.push_back(h);
  }
  SynthNetwork net;
  net.snapshot = ConnectionSnapshot::FromConnections(
      "figure1-" + std::to_string(spec.sales) + "x" + std::to_string(spec.eng), std::move(pairs));
  net.ground_truth.snapshot_label = net.snapshot.label();
  net.ground_truth.groups = {Group{GroupId{0}, 0, {mail, web}}, std::move(sales), std::move(eng),
                             Group{GroupId{3}, 0, {sales_db}}, Group{GroupId{4}, 0, {src}}};
  SortGroups(net.ground_truth);
  return net;
}

SynthNetwork GenerateRoles(const RolesSpec& spec) {
  if (spec.min_hosts == 0 || spec.min_hosts > spec.max_hosts) {
    throw ValidationError("roles: need 1 <= min_hosts <= max_hosts");
  }
  if (spec.servers_per_role == 0) throw ValidationError("roles: servers_per_role must be positive");
  if (!(spec.share_probability >= 0.0 && spec.share_probability <= 1.0)) {
    throw ValidationError("roles: share_probability must lie in [0,1]");
  }
  Rng rng(spec.seed);
  std::vector<std::vector<HostId>> servers(spec.roles);
  std::vector<std::vector<HostId>> clients(spec.roles);
  for (std::uint32_t r = 0; r < spec.roles; ++r) {
    for (std::uint32_t s = 0; s < spec.servers_per_role; ++s) {
      servers[r].emplace_back(Name("role%03u-server%02u", r, s));
    }
    const auto n = spec.min_hosts +
                   static_cast<std::uint32_t>(rng.Below(spec.max_hosts - spec.min_hosts + 1));
    for (std::uint32_t c = 0; c < n; ++c) clients[r].emplace_back(Name("role%03u-client%04u", r, c));
  }

  std::vector<std::pair<HostId, HostId>> pairs;
  for (std::uint32_t r = 0; r < spec.roles; ++r) {
    for (const HostId& c : clients[r]) {
      for (const HostId& s : servers[r]) pairs.emplace_back(c, s);
      for (std::uint32_t other = 0; other < spec.roles; ++other) {
        if (other == r || !rng.Chance(spec.share_probability)) continue;
        pairs.emplace_back(c, servers[other][rng.Below(spec.servers_per_role)]);
      }
    }
  }

  SynthNetwork net;
  std::vector<HostId> hosts;
  for (std::uint32_t r = 0; r < spec.roles; ++r) {
    hosts.insert(hosts.end(), servers[r].begin(), servers[r].end());
    hosts.insert(hosts.end(), clients[r].begin(), clients[r].end());
  }
  net.snapshot = ConnectionSnapshot::Build("roles-" + std::to_string(spec.seed), std::move(hosts),
                                           std::move(pairs));
  net.ground_truth.snapshot_label = net.snapshot.label();
  for (std::uint32_t r = 0; r < spec.roles; ++r) {
    net.ground_truth.groups.push_back(Group{GroupId{2 * r}, 0, clients[r]});
    net.ground_truth.groups.push_back(Group{GroupId{2 * r + 1}, 0, servers[r]});
  }
  SortGroups(net.ground_truth);
  return net;
}

SynthNetwork Synthesize(const SynthSpec& spec) {
  return std::visit(
      [](const auto& s) -> SynthNetwork {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Figure1Spec>) {
          return GenerateFigure1(s);
        } else {
          return GenerateRoles(s);
        }
      },
      spec);
}

}  // namespace rolegroup
