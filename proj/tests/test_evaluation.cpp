#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "rolegroup/correlation.hpp"
#include "rolegroup/error.hpp"
#include "rolegroup/evaluation.hpp"
#include "rolegroup/pipeline.hpp"

using namespace rolegroup;

namespace {

Partitioning Make(const std::vector<std::vector<std::string>>& sets) {
  Partitioning p;
  std::uint32_t id = 0;
  for (const auto& set : sets) {
    Group g{GroupId{id++}, 0, {}};
    for (const auto& h : set) g.members.emplace_back(h);
    std::sort(g.members.begin(), g.members.end());
    p.groups.push_back(std::move(g));
  }
  return p;
}

Partitioning RandomPartitioning(std::mt19937_64& rng, std::size_t hosts, std::size_t max_groups) {
  std::vector<std::vector<std::string>> sets(1 + rng() % max_groups);
  for (std::size_t i = 0; i < hosts; ++i) {
    sets[rng() % sets.size()].push_back("h" + std::to_string(i));
  }
  std::erase_if(sets, [](const auto& s) { return s.empty(); });
  return Make(sets);
}

}  // namespace

TEST(Rand, PublishedCounts) {
  const auto c = RandFromCounts(452, 710, 133, 3856);
  EXPECT_NEAR(c.r, 0.8363, 0.00005);
  EXPECT_EQ(c.total(), 5151u);
}

TEST(Rand, NoPairsIsOne) {
  EXPECT_DOUBLE_EQ(RandFromCounts(0, 0, 0, 0).r, 1.0);
  const auto p = Make({{"a"}});
  EXPECT_DOUBLE_EQ(RandStatistic(p, p).r, 1.0);
}

TEST(Rand, IdenticalPartitionings) {
  const auto p = Make({{"a", "b"}, {"c"}, {"d", "e", "f"}});
  const auto c = RandStatistic(p, p);
  EXPECT_EQ(c.sd, 0u);
  EXPECT_EQ(c.ds, 0u);
  EXPECT_DOUBLE_EQ(c.r, 1.0);
}

TEST(Rand, OneGroupVersusSingletons) {
  const auto star = Make({{"a", "b", "c"}});
  const auto p = Make({{"a"}, {"b"}, {"c"}});
  const auto c = RandStatistic(p, star);
  EXPECT_EQ(c.ss, 0u);
  EXPECT_EQ(c.sd, 3u);
  EXPECT_EQ(c.ds, 0u);
  EXPECT_EQ(c.dd, 0u);
  EXPECT_DOUBLE_EQ(c.r, 0.0);
}

TEST(Rand, MatchesPairEnumeration) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = RandomPartitioning(rng, 20, 6);
    const auto star = RandomPartitioning(rng, 20, 6);
    const auto got = RandStatistic(p, star);
    const auto want = oracle::BruteForceRand(p, star);
    ASSERT_EQ(got.ss, want.ss);
    ASSERT_EQ(got.sd, want.sd);
    ASSERT_EQ(got.ds, want.ds);
    ASSERT_EQ(got.dd, want.dd);
    ASSERT_EQ(got.total(), 190u);
    ASSERT_NEAR(got.r, static_cast<double>(want.ss + want.dd) / 190.0, 1e-12);
    // Swapping the arguments swaps sd and ds.
    const auto swapped = RandStatistic(star, p);
    ASSERT_EQ(swapped.sd, got.ds);
    ASSERT_EQ(swapped.ds, got.sd);
    ASSERT_DOUBLE_EQ(swapped.r, got.r);
  }
}

TEST(Rand, HostMismatchListsDifferences) {
  const auto p = Make({{"a", "b"}, {"x"}});
  const auto star = Make({{"a", "b"}, {"y"}});
  try {
    RandStatistic(p, star);
    FAIL();
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("only in computed (1): x"), std::string::npos) << msg;
    EXPECT_NE(msg.find("only in reference (1): y"), std::string::npos) << msg;
  }
}

TEST(PartitionDiff, IdenticalRunsAreEmpty) {
  const auto s = GenerateFigure1({3, 3}).snapshot;
  const auto p = FormGroups(s);
  EXPECT_TRUE(PartitionDiff(p, p, Correlate({s, p}, {s, p})).empty());
}

TEST(PartitionDiff, MovedHost) {
  const auto prev = Make({{"a", "b", "c"}, {"d", "e"}});
  const auto curr = Make({{"a", "b"}, {"c", "d", "e"}});
  CorrelationResult r;
  r.matches.emplace(GroupId{0}, Match{GroupId{0}, MatchStep::kTimeVarying, 1.0});
  r.matches.emplace(GroupId{1}, Match{GroupId{1}, MatchStep::kTimeVarying, 1.0});
  const auto d = PartitionDiff(prev, curr, r);
  ASSERT_EQ(d.changed.size(), 2u);
  EXPECT_EQ(d.changed[0].removed, (std::vector<HostId>{HostId("c")}));
  EXPECT_TRUE(d.changed[0].added.empty());
  EXPECT_EQ(d.changed[1].added, (std::vector<HostId>{HostId("c")}));
  EXPECT_TRUE(d.changed[1].removed.empty());
}

TEST(PartitionDiff, ChurnedFigure1) {
  const auto prev = GenerateFigure1({3, 3}).snapshot;
  const auto curr = oracle::ChurnedFigure1();
  PipelineConfig c;
  c.merge_enabled = false;
  const auto pp = RunPipeline(prev, c);
  const auto pc = RunPipeline(curr, c);
  const auto r = Correlate({prev, pp}, {curr, pc});
  const auto d = PartitionDiff(pp, ApplyCorrelation(pc, pp, r), [&] {
    CorrelationResult shifted;
    for (const auto& [cur, m] : r.matches) shifted.matches.emplace(m.prior, m);
    return shifted;
  }());
  std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::string>>> by_first;
  for (const auto& g : d.changed) {
    std::vector<std::string> added, removed;
    for (const auto& h : g.added) added.push_back(h.str());
    for (const auto& h : g.removed) removed.push_back(h.str());
    by_first[pp.find(g.prior_id)->members.front().str()] = {added, removed};
  }
  EXPECT_EQ(by_first["Mail"].first, (std::vector<std::string>{"Web-2"}));
  EXPECT_EQ(by_first["Mail"].second, (std::vector<std::string>{"Web"}));
  EXPECT_EQ(by_first["Sales-1"].second, (std::vector<std::string>{"Sales-3"}));
  EXPECT_EQ(by_first["Eng-1"].first, (std::vector<std::string>{"Eng-4"}));
  EXPECT_EQ(by_first["SalesDatabase"].first, (std::vector<std::string>{"SourceRevisionControl"}));
  EXPECT_EQ(by_first["SourceRevisionControl"].first, (std::vector<std::string>{"SalesDatabase"}));
}
