#pragma once

#include <cstdint>
#include <variant>

#include "rolegroup/partitioning.hpp"
#include "rolegroup/snapshot.hpp"

namespace rolegroup {

// Two client populations sharing a mail and a web server, each with one
// dedicated server: Sales-1..Sales-M use SalesDatabase, Eng-1..Eng-N use
// SourceRevisionControl.
struct Figure1Spec {
  std::uint32_t sales = 3;
  std::uint32_t eng = 3;
};

// Seeded role-structured network. Every role has `servers_per_role`
// dedicated servers and a client population drawn uniformly from
// [min_hosts, max_hosts]; each client talks to all of its role's servers and,
// independently for every other role with probability `share_probability`, to
// one randomly chosen server of that role.
struct RolesSpec {
  std::uint32_t roles = 10;
  std::uint32_t min_hosts = 10;
  std::uint32_t max_hosts = 30;
  std::uint32_t servers_per_role = 3;
  double share_probability = 0.01;
  std::uint64_t seed = 1;
};

using SynthSpec = std::variant<Figure1Spec, RolesSpec>;

struct SynthNetwork {
  ConnectionSnapshot snapshot;
  // One group per client population and one per server set.
  Partitioning ground_truth;
};

SynthNetwork GenerateFigure1(const Figure1Spec& spec);
SynthNetwork GenerateRoles(const RolesSpec& spec);
SynthNetwork Synthesize(const SynthSpec& spec);

}  // namespace rolegroup
