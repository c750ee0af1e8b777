#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rolegroup/correlation.hpp"
#include "rolegroup/evaluation.hpp"
#include "rolegroup/partitioning.hpp"
#include "rolegroup/pipeline.hpp"
#include "rolegroup/snapshot.hpp"

namespace rolegroup {

// Edge list: one "src,dst" pair per line. Lines starting with '#' are
// comments, except "#host <id>" which declares a (possibly isolated) host.
// Blank lines are ignored; surrounding whitespace on tokens is trimmed.
ConnectionSnapshot ParseEdgeList(std::string_view text, std::string label = "");
// "#host" lines for isolated hosts, then canonical pairs in sorted order.
std::string WriteEdgeList(const ConnectionSnapshot& snapshot);

// Serializable view of a partitioning plus the per-host and per-neighbour
// connection figures needed for reporting.
struct PartitioningDocument {
  struct Member {
    HostId host;
    std::uint64_t connections = 0;
    friend bool operator==(const Member&, const Member&) = default;
  };
  struct GroupEntry {
    GroupId id;
    std::uint32_t k_value = 0;
    std::vector<Member> members;  // sorted by host
    double avg_connections = 0.0;
    friend bool operator==(const GroupEntry&, const GroupEntry&) = default;
  };
  // Connections between `from` and `to` divided by |from|.
  struct InterGroup {
    GroupId from;
    GroupId to;
    double avg_connections = 0.0;
    friend bool operator==(const InterGroup&, const InterGroup&) = default;
  };

  std::string snapshot_label;
  std::optional<PipelineConfig> config;
  std::vector<GroupEntry> groups;        // by id
  std::vector<InterGroup> inter_group;   // by (from, to)

  Partitioning ToPartitioning() const;
  friend bool operator==(const PartitioningDocument& a, const PartitioningDocument& b);
};

PartitioningDocument MakePartitioningDocument(const Partitioning& partitioning,
                                              const ConnectionSnapshot& snapshot,
                                              const std::optional<PipelineConfig>& config = {});

// JSON with sorted keys, two-space indent, trailing newline.
std::string WritePartitioningDocument(const PartitioningDocument& doc);
// Accepts documents written above as well as minimal hand-written ones whose
// groups only carry "id" and "members" (a list of host tokens).
PartitioningDocument ReadPartitioningDocument(std::string_view text);

std::string WriteCorrelationDocument(const CorrelationResult& result);
std::string WriteDiffDocument(const DiffReport& diff);

// "ss,sd,ds,dd,r" header plus one row; r with four decimals.
std::string WriteRandCsv(const RandCounts& counts);

// Text report: per group "Group <id> (<K>)", one line per member with its
// connection count, then "comm with <id>: <avg>" per neighbour group.
std::string WriteReport(const PartitioningDocument& doc);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view content);

}  // namespace rolegroup
