#include <gtest/gtest.h>

#include "oracle.hpp"
#include "rolegroup/error.hpp"
#include "rolegroup/io.hpp"
#include "rolegroup/pipeline.hpp"
#include "rolegroup/sweep.hpp"
#include "rolegroup/synth.hpp"

using namespace rolegroup;

TEST(ParseEdgeList, Basics) {
  const auto s = ParseEdgeList("a,b\nb,c");
  EXPECT_EQ(s.host_count(), 3u);
  EXPECT_EQ(s.connection_count(), 2u);
  EXPECT_EQ(ParseEdgeList("a,b\nb,a\n").connection_count(), 1u);
  EXPECT_EQ(ParseEdgeList("").host_count(), 0u);
}

TEST(ParseEdgeList, CommentsDirectivesAndWhitespace) {
  const auto s = ParseEdgeList("# capture 1\n\n#host lone\n  a , b \r\n#hostile,comment\n");
  EXPECT_EQ(s.host_count(), 3u);
  EXPECT_TRUE(s.contains(HostId("lone")));
  EXPECT_EQ(s.connection_count(), 1u);
}

TEST(ParseEdgeList, ErrorsCarryLineNumbers) {
  auto line_of = [](const char* text) {
    try {
      ParseEdgeList(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("a,a\n"), 1u);
  EXPECT_EQ(line_of("a,b\n\nnocomma\n"), 3u);
  EXPECT_EQ(line_of("a,b,c\n"), 1u);
  EXPECT_EQ(line_of("a,b\n,c\n"), 2u);
  EXPECT_EQ(line_of("#host two words\n"), 1u);
  EXPECT_THROW(ParseEdgeList("a,a"), ValidationError);
}

TEST(EdgeList, ReserializationIsIdempotent) {
  const auto s = ParseEdgeList("#host z\nc,a\nb,a\na,c\n", "x");
  const auto text = WriteEdgeList(s);
  EXPECT_EQ(text, "#host z\na,b\na,c\n");
  EXPECT_EQ(ParseEdgeList(text, "x"), s);
  EXPECT_EQ(WriteEdgeList(ParseEdgeList(text, "x")), text);
}

TEST(PartitioningDocument, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = GenerateRoles({5, 2, 6, 3, 0.2, seed}).snapshot;
    PipelineConfig c;
    c.merge.s_lo = 40;
    const auto p = RunPipeline(s, c);
    const auto doc = MakePartitioningDocument(p, s, c);
    const auto text = WritePartitioningDocument(doc);
    const auto back = ReadPartitioningDocument(text);
    EXPECT_EQ(back, doc);
    EXPECT_EQ(back.ToPartitioning(), p);
    EXPECT_EQ(WritePartitioningDocument(back), text);
  }
}

TEST(PartitioningDocument, Layout) {
  const auto s = GenerateFigure1({3, 3}).snapshot;
  PipelineConfig c;
  c.merge_enabled = false;
  const auto text = WritePartitioningDocument(MakePartitioningDocument(RunPipeline(s, c), s, c));
  EXPECT_EQ(text.back(), '\n');
  EXPECT_LT(text.find("\"config\""), text.find("\"groups\""));
  EXPECT_LT(text.find("\"groups\""), text.find("\"inter_group\""));
  EXPECT_LT(text.find("\"inter_group\""), text.find("\"snapshot_label\""));
  EXPECT_NE(text.find("\"s_lo\": 55.0"), std::string::npos);
  EXPECT_NE(text.find("\"merge\": false"), std::string::npos);
}

TEST(PartitioningDocument, MinimalHandWritten) {
  const auto doc = ReadPartitioningDocument(
      R"({"groups": [{"id": 3, "members": ["b", "a"]}, {"id": 1, "members": ["c"]}]})");
  const auto p = doc.ToPartitioning();
  ASSERT_EQ(p.groups.size(), 2u);
  EXPECT_EQ(p.groups[0].id, GroupId{1});
  EXPECT_EQ(p.groups[1].members, (std::vector<HostId>{HostId("a"), HostId("b")}));
}

TEST(PartitioningDocument, Malformed) {
  EXPECT_THROW(ReadPartitioningDocument("{"), ValidationError);
  EXPECT_THROW(ReadPartitioningDocument(R"({"groups": [{"members": []}]})"), ValidationError);
  EXPECT_THROW(ReadPartitioningDocument(R"({"groups": [{"id": 0, "members": ["bad host"]}]})"),
               ValidationError);
}

TEST(Report, Figure1) {
  const auto s = GenerateFigure1({3, 3}).snapshot;
  const auto p = FormGroups(s);
  const auto report = WriteReport(MakePartitioningDocument(p, s));
  const std::string head =
      "Group 0 (6)\n"
      "  Mail 6\n"
      "  Web 6\n"
      "  comm with 1: 3.0\n"
      "  comm with 2: 3.0\n"
      "\n"
      "Group 1 (3)\n";
  EXPECT_EQ(report.substr(0, head.size()), head);
  EXPECT_NE(report.find("Group 3 (1)\n  SalesDatabase 3\n  comm with 2: 3.0\n"), std::string::npos);
}

TEST(Report, EmptyAndSingleton) {
  EXPECT_EQ(WriteReport(PartitioningDocument{}), "");
  const auto s = ConnectionSnapshot::Build("x", {HostId("lone")}, {});
  const auto report = WriteReport(MakePartitioningDocument(FormGroups(s), s));
  EXPECT_EQ(report, "Group 0 (0)\n  lone 0\n");
}

TEST(RandCsv, Format) {
  EXPECT_EQ(WriteRandCsv(RandFromCounts(452, 710, 133, 3856)), "ss,sd,ds,dd,r\n452,710,133,3856,0.8363\n");
  EXPECT_EQ(WriteRandCsv(RandFromCounts(0, 0, 0, 0)), "ss,sd,ds,dd,r\n0,0,0,0,1.0000\n");
}

TEST(Synth, Figure1Shape) {
  const auto net = GenerateFigure1({3, 3});
  EXPECT_EQ(net.snapshot.host_count(), 10u);
  EXPECT_EQ(net.snapshot.connection_count(), 18u);
  EXPECT_EQ(net.ground_truth.groups.size(), 5u);
  EXPECT_NO_THROW(ValidatePartitioning(net.ground_truth, net.snapshot));
  const auto big = GenerateFigure1({8, 5});
  EXPECT_EQ(big.snapshot.host_count(), 17u);
  EXPECT_EQ(big.snapshot.connection_count(), 2u * 13u + 13u);
  EXPECT_THROW(GenerateFigure1({0, 3}), ValidationError);
}

TEST(Synth, RolesDeterministic) {
  const RolesSpec spec{12, 5, 20, 3, 0.05, 42};
  const auto a = GenerateRoles(spec);
  const auto b = GenerateRoles(spec);
  EXPECT_EQ(a.snapshot, b.snapshot);
  EXPECT_EQ(a.ground_truth, b.ground_truth);
  EXPECT_EQ(WriteEdgeList(a.snapshot), WriteEdgeList(b.snapshot));
  EXPECT_NE(WriteEdgeList(GenerateRoles({12, 5, 20, 3, 0.05, 43}).snapshot), WriteEdgeList(a.snapshot));
  EXPECT_EQ(a.ground_truth.groups.size(), 24u);
  EXPECT_NO_THROW(ValidatePartitioning(a.ground_truth, a.snapshot));
}

TEST(Synth, RolesEdgeCases) {
  RolesSpec spec;
  spec.roles = 0;
  EXPECT_TRUE(GenerateRoles(spec).snapshot.empty());
  spec = {};
  spec.min_hosts = 5;
  spec.max_hosts = 4;
  EXPECT_THROW(GenerateRoles(spec), ValidationError);
  spec = {};
  spec.share_probability = 2;
  EXPECT_THROW(GenerateRoles(spec), ValidationError);
}

TEST(Sweep, ValuesAndCsv) {
  EXPECT_EQ(SweepValues({5, 75, 10}).size(), 8u);
  EXPECT_EQ(SweepValues({5, 5, 1}).size(), 1u);
  EXPECT_EQ(SweepValues({0.1, 0.3, 0.1}).size(), 3u);
  EXPECT_THROW(SweepValues({5, 1, 1}), ValidationError);
  EXPECT_THROW(SweepValues({1, 5, 0}), ValidationError);
  const auto s = GenerateFigure1({3, 3}).snapshot;
  EXPECT_EQ(WriteSweepCsv(SweepParameter::kSLo, Sweep(s, SweepParameter::kSLo, {76, 76, 1})),
            "param,value,groups\ns_lo,76,5\n");
  EXPECT_THROW(Sweep(s, SweepParameter::kSLo, {50, 85, 5}), ValidationError);
  EXPECT_THROW(Sweep(s, SweepParameter::kKHi, {1.5, 3, 1}), ValidationError);
  EXPECT_EQ(ParseSweepParameter("k_hi"), SweepParameter::kKHi);
  EXPECT_THROW(ParseSweepParameter("alpha"), ValidationError);
}

TEST(Sweep, Figure1EightTrend) {
  const auto s = GenerateFigure1({8, 8}).snapshot;
  const auto points = Sweep(s, SweepParameter::kSLo, {5, 75, 10});
  ASSERT_EQ(points.size(), 8u);
  int decreases = 0;
  for (std::size_t i = 1; i < points.size(); ++i) decreases += points[i].groups < points[i - 1].groups;
  EXPECT_LE(decreases, 1);
  EXPECT_EQ(points.front().groups, 3u);
  EXPECT_EQ(points.back().groups, 5u);
}

TEST(Sweep, KHiIrrelevantWhenNothingQualifies) {
  // Two disconnected cliques: no pair of groups shares a neighbour group.
  const auto s = ParseEdgeList("a,b\nb,c\na,c\nx,y\ny,z\nx,z\n");
  const auto points = Sweep(s, SweepParameter::kKHi, {0, 10, 1});
  for (const auto& p : points) EXPECT_EQ(p.groups, points.front().groups);
}
