#include <gtest/gtest.h>

#include "oracle.hpp"
#include "rolegroup/error.hpp"
#include "rolegroup/graph_core.hpp"
#include "rolegroup/io.hpp"
#include "rolegroup/synth.hpp"

using namespace rolegroup;

namespace {

ConnectionSnapshot Figure1() { return GenerateFigure1({3, 3}).snapshot; }

HostId H(const char* s) { return HostId(s); }

NeighborhoodGraph Plain(std::size_t n, const std::vector<std::pair<HostIndex, HostIndex>>& edges) {
  NeighborhoodGraph g;
  for (HostIndex i = 0; i < n; ++i) g.nodes.push_back(i);
  for (auto [a, b] : edges) g.edges.push_back({std::min(a, b), std::max(a, b), 1});
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

}  // namespace

TEST(Snapshot, Figure1Shape) {
  const auto s = Figure1();
  EXPECT_EQ(s.host_count(), 10u);
  EXPECT_EQ(s.connection_count(), 18u);
  EXPECT_EQ(s.degree(s.index_of(H("Mail"))), 6u);
  EXPECT_EQ(s.degree(s.index_of(H("Sales-2"))), 3u);
}

TEST(Snapshot, EmptyAndInvalid) {
  const auto empty = ConnectionSnapshot::Build("e", {}, {});
  EXPECT_TRUE(empty.empty());
  EXPECT_EQ(empty.max_degree(), 0u);
  EXPECT_THROW(ConnectionSnapshot::Build("x", {H("a")}, {{H("a"), H("a")}}), ValidationError);
  EXPECT_THROW(ConnectionSnapshot::Build("x", {H("a")}, {{H("a"), H("b")}}), ValidationError);
  EXPECT_THROW(HostId("has space"), ValidationError);
  EXPECT_THROW(HostId(""), ValidationError);
}

TEST(Snapshot, DeduplicatesBothOrientations) {
  const auto s = ConnectionSnapshot::FromConnections(
      "d", {{H("b"), H("a")}, {H("a"), H("b")}, {H("a"), H("b")}});
  EXPECT_EQ(s.connection_count(), 1u);
  ASSERT_EQ(s.connections().size(), 1u);
  EXPECT_EQ(s.connections()[0].a, H("a"));
}

TEST(Snapshot, RestrictDropsIncidentConnections) {
  const auto s = ParseEdgeList("a,b\nb,c\nc,d\n");
  const std::vector<HostId> keep{H("b"), H("c")};
  const auto r = s.Restrict(keep);
  EXPECT_EQ(r.host_count(), 2u);
  EXPECT_EQ(r.connection_count(), 1u);
}

TEST(PairSimilarity, Figure1Values) {
  const auto s = Figure1();
  EXPECT_EQ(PairSimilarity(s, H("Mail"), H("Web")), 6u);
  EXPECT_EQ(PairSimilarity(s, H("Sales-1"), H("Sales-2")), 3u);
  EXPECT_EQ(PairSimilarity(s, H("Sales-1"), H("Eng-1")), 2u);
  EXPECT_EQ(PairSimilarity(s, H("Mail"), H("SalesDatabase")), 3u);
}

TEST(PairSimilarity, DisjointNeighboursAndErrors) {
  const auto s = ParseEdgeList("a,b\nc,d\n");
  EXPECT_EQ(PairSimilarity(s, H("a"), H("c")), 0u);
  // Mutually connected hosts with no third party share nothing.
  EXPECT_EQ(PairSimilarity(s, H("a"), H("b")), 0u);
  EXPECT_THROW(PairSimilarity(s, H("a"), H("zz")), LookupError);
  EXPECT_THROW(PairSimilarity(s, H("a"), H("a")), ValidationError);
}

TEST(PairSimilarity, Symmetric) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto net = GenerateRoles({4, 3, 6, 3, 0.2, seed}).snapshot;
    for (HostIndex a = 0; a < net.host_count(); ++a) {
      for (HostIndex b = a + 1; b < net.host_count(); ++b) {
        ASSERT_EQ(PairSimilarity(net, a, b), PairSimilarity(net, b, a));
      }
    }
  }
}

TEST(AvgSimilarity, Figure1) {
  const auto s = Figure1();
  const std::vector<HostId> others{H("Sales-2"), H("Sales-3")};
  EXPECT_DOUBLE_EQ(AvgSimilarity(s, H("Sales-1"), others), 3.0);
  const std::vector<HostId> with_self{H("Sales-1"), H("Sales-2"), H("Sales-3")};
  EXPECT_DOUBLE_EQ(AvgSimilarity(s, H("Sales-1"), with_self), 3.0);
  const std::vector<HostId> mixed{H("Sales-2"), H("Eng-1")};
  EXPECT_DOUBLE_EQ(AvgSimilarity(s, H("Sales-1"), mixed), 2.5);
}

TEST(AvgSimilarity, IsolatedAndEmpty) {
  const auto s = ParseEdgeList("#host lone\na,b\n");
  const std::vector<HostId> g{H("a"), H("b")};
  EXPECT_DOUBLE_EQ(AvgSimilarity(s, H("lone"), g), 0.0);
  const std::vector<HostId> only_self{H("a")};
  EXPECT_THROW(AvgSimilarity(s, H("a"), only_self), UndefinedAverageError);
  EXPECT_THROW(AvgSimilarity(s, H("a"), {}), UndefinedAverageError);
}

TEST(ConnGraph, AbsorbReplacesMembers) {
  const auto s = Figure1();
  ConnGraph g(s);
  EXPECT_EQ(g.ungrouped_count(), 10u);
  const std::vector<HostIndex> mw{s.index_of(H("Mail")), s.index_of(H("Web"))};
  g.Absorb(mw, GroupId{0});
  EXPECT_EQ(g.ungrouped_count(), 8u);
  EXPECT_EQ(g.group_node_count(), 1u);
  EXPECT_EQ(g.group_of(mw[0]), GroupId{0});
  EXPECT_EQ(g.GroupNodeHostNeighbors(GroupId{0}).size(), 6u);
  EXPECT_THROW(g.Absorb(mw, GroupId{1}), ValidationError);
  const std::vector<HostIndex> sdb{s.index_of(H("SalesDatabase"))};
  EXPECT_THROW(g.Absorb(sdb, GroupId{0}), ValidationError);
}

TEST(ConnGraph, Empty) {
  const auto s = ConnectionSnapshot::Build("e", {}, {});
  const ConnGraph g = BuildConnGraph(s);
  EXPECT_EQ(g.ungrouped_count(), 0u);
  EXPECT_TRUE(g.ungrouped().empty());
}

TEST(KNeighborhood, Figure1AtSixIsMailWeb) {
  const auto s = Figure1();
  const ConnGraph conn(s);
  const auto g = BuildKNeighborhoodGraph(s, conn, 6);
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(s.host(g.edges[0].a), H("Mail"));
  EXPECT_EQ(s.host(g.edges[0].b), H("Web"));
  EXPECT_EQ(g.edges[0].weight, 6u);
}

TEST(KNeighborhood, Figure1AtThreeAfterMailWeb) {
  const auto s = Figure1();
  ConnGraph conn(s);
  const std::vector<HostIndex> mw{s.index_of(H("Mail")), s.index_of(H("Web"))};
  conn.Absorb(mw, GroupId{0});
  const auto g = BuildKNeighborhoodGraph(s, conn, 3);
  std::set<std::pair<std::string, std::string>> got;
  for (const auto& e : g.edges) {
    EXPECT_EQ(e.weight, 3u);
    got.emplace(s.host(e.a).str(), s.host(e.b).str());
  }
  const std::set<std::pair<std::string, std::string>> want{
      {"Eng-1", "Eng-2"},     {"Eng-1", "Eng-3"},     {"Eng-2", "Eng-3"},
      {"Sales-1", "Sales-2"}, {"Sales-1", "Sales-3"}, {"Sales-2", "Sales-3"}};
  EXPECT_EQ(got, want);
  EXPECT_EQ(FindBiconnectedComponents(g).size(), 2u);
}

TEST(KNeighborhood, AboveMaximumIsEdgeless) {
  const auto s = Figure1();
  const ConnGraph conn(s);
  EXPECT_TRUE(BuildKNeighborhoodGraph(s, conn, 7).edges.empty());
  EXPECT_THROW(BuildKNeighborhoodGraph(s, conn, 0), ValidationError);
}

TEST(KNeighborhood, IndexMatchesDirectConstructionAndShrinks) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto s = GenerateRoles({5, 3, 8, 3, 0.15, seed}).snapshot;
    const CommonNeighborIndex index(s);
    ConnGraph conn(s);
    if (s.host_count() > 3) {
      const std::vector<HostIndex> some{0, 1};
      conn.Absorb(some, GroupId{0});
    }
    std::vector<WeightedEdge> previous;
    for (std::uint32_t k = index.max_weight() + 1; k >= 1; --k) {
      const auto direct = BuildKNeighborhoodGraph(s, conn, k);
      const auto indexed = BuildKNeighborhoodGraph(index, conn, k);
      ASSERT_EQ(direct.edges, indexed.edges) << "seed " << seed << " k " << k;
      ASSERT_EQ(direct.nodes, indexed.nodes);
      for (const auto& e : direct.edges) {
        ASSERT_GE(e.weight, k);
        ASSERT_EQ(e.weight, PairSimilarity(s, e.a, e.b));
        ASSERT_FALSE(conn.is_grouped(e.a) || conn.is_grouped(e.b));
      }
      // Edges at k + 1 are a subset of edges at k.
      ASSERT_TRUE(std::includes(direct.edges.begin(), direct.edges.end(), previous.begin(),
                                previous.end()));
      previous = direct.edges;
    }
  }
}

TEST(Bcc, Triangle) {
  const auto bccs = FindBiconnectedComponents(Plain(3, {{0, 1}, {1, 2}, {0, 2}}));
  EXPECT_EQ(bccs, (std::vector<std::vector<HostIndex>>{{0, 1, 2}}));
}

TEST(Bcc, Path) {
  const auto bccs = FindBiconnectedComponents(Plain(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(bccs, (std::vector<std::vector<HostIndex>>{{0, 1}, {1, 2}}));
}

TEST(Bcc, BowTieSharesCutVertex) {
  const auto bccs = FindBiconnectedComponents(Plain(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}}));
  EXPECT_EQ(bccs, (std::vector<std::vector<HostIndex>>{{0, 1, 2}, {2, 3, 4}}));
}

TEST(Bcc, IsolatedNodesProduceNothing) {
  EXPECT_TRUE(FindBiconnectedComponents(Plain(4, {})).empty());
}

TEST(Bcc, MatchesBruteForceOracle) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto rg = oracle::MakeRandomGraph(seed);
    ASSERT_EQ(FindBiconnectedComponents(Plain(rg.n, rg.edges)), oracle::BruteForceBccs(rg.n, rg.edges))
        << "seed " << seed;
  }
}

TEST(Bcc, SparseNodeIndicesAreHonoured) {
  NeighborhoodGraph g;
  g.nodes = {3, 7, 9};
  g.edges = {{3, 7, 2}, {3, 9, 2}, {7, 9, 2}};
  EXPECT_EQ(FindBiconnectedComponents(g), (std::vector<std::vector<HostIndex>>{{3, 7, 9}}));
}
