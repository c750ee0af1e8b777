#include "rolegroup/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "rolegroup/error.hpp"
#include "rolegroup/merging.hpp"

namespace rolegroup {

using nlohmann::json;

namespace {

std::string_view Trim(std::string_view s) {
  const auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && space(s.front())) s.remove_prefix(1);
  while (!s.empty() && space(s.back())) s.remove_suffix(1);
  return s;
}

HostId TokenAt(std::size_t line, std::string_view token) {
  if (!HostId::IsValidToken(token)) {
    throw ParseError(line, "invalid host token '" + std::string(token) + "'");
  }
  return HostId(std::string(token));
}

std::string Fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

const char* NormalizationName(SimilarityNormalization n) {
  return n == SimilarityNormalization::kGroupSize ? "group_size" : "neighbor_host_count";
}

SimilarityNormalization NormalizationFromName(const std::string& name) {
  if (name == "group_size") return SimilarityNormalization::kGroupSize;
  if (name == "neighbor_host_count") return SimilarityNormalization::kNeighborHostCount;
  throw ValidationError("unknown similarity normalization '" + name + "'");
}

bool SameConfig(const std::optional<PipelineConfig>& a, const std::optional<PipelineConfig>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  return a->formation.alpha == b->formation.alpha && a->merge.beta == b->merge.beta &&
         a->merge.s_hi == b->merge.s_hi && a->merge.s_lo == b->merge.s_lo &&
         a->merge.k_hi == b->merge.k_hi && a->merge.normalization == b->merge.normalization &&
         a->merge_enabled == b->merge_enabled;
}

json GroupIds(const std::vector<GroupId>& ids) {
  json out = json::array();
  for (GroupId id : ids) out.push_back(id.value);
  return out;
}

json Hosts(const std::vector<HostId>& hosts) {
  json out = json::array();
  for (const HostId& h : hosts) out.push_back(h.str());
  return out;
}

std::string Dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

ConnectionSnapshot ParseEdgeList(std::string_view text, std::string label) {
  std::vector<std::pair<HostId, HostId>> pairs;
  std::vector<HostId> declared;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    line = Trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view kDirective = "#host";
      if (line.substr(0, kDirective.size()) == kDirective &&
          (line.size() == kDirective.size() || line[kDirective.size()] == ' ' ||
           line[kDirective.size()] == '\t')) {
        declared.push_back(TokenAt(line_no, Trim(line.substr(kDirective.size()))));
      }
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw ParseError(line_no, "expected 'src,dst', got '" + std::string(line) + "'");
    }
    const auto src = Trim(line.substr(0, comma));
    const auto dst = Trim(line.substr(comma + 1));
    if (dst.find(',') != std::string_view::npos) {
      throw ParseError(line_no, "expected exactly two fields, got '" + std::string(line) + "'");
    }
    HostId a = TokenAt(line_no, src);
    HostId b = TokenAt(line_no, dst);
    if (a == b) throw ParseError(line_no, "self-pair connection (" + a.str() + "," + b.str() + ")");
    pairs.emplace_back(std::move(a), std::move(b));
  }
  return ConnectionSnapshot::FromConnections(std::move(label), std::move(pairs), std::move(declared));
}

std::string WriteEdgeList(const ConnectionSnapshot& snapshot) {
  std::string out;
  for (HostIndex i = 0; i < snapshot.host_count(); ++i) {
    if (snapshot.degree(i) == 0) out += "#host " + snapshot.host(i).str() + "\n";
  }
  for (const auto& c : snapshot.connections()) out += c.a.str() + "," + c.b.str() + "\n";
  return out;
}

Partitioning PartitioningDocument::ToPartitioning() const {
  Partitioning p;
  p.snapshot_label = snapshot_label;
  for (const auto& g : groups) {
    Group group{g.id, g.k_value, {}};
    for (const auto& m : g.members) group.members.push_back(m.host);
    std::sort(group.members.begin(), group.members.end());
    p.groups.push_back(std::move(group));
  }
  std::sort(p.groups.begin(), p.groups.end(),
            [](const Group& a, const Group& b) { return a.id < b.id; });
  return p;
}

bool operator==(const PartitioningDocument& a, const PartitioningDocument& b) {
  return a.snapshot_label == b.snapshot_label && SameConfig(a.config, b.config) &&
         a.groups == b.groups && a.inter_group == b.inter_group;
}

PartitioningDocument MakePartitioningDocument(const Partitioning& partitioning,
                                              const ConnectionSnapshot& snapshot,
                                              const std::optional<PipelineConfig>& config) {
  const GroupGraph graph(partitioning, snapshot);
  PartitioningDocument doc;
  doc.snapshot_label = partitioning.snapshot_label;
  doc.config = config;
  for (const Group& g : graph.partitioning().groups) {
    PartitioningDocument::GroupEntry entry;
    entry.id = g.id;
    entry.k_value = g.k_value;
    for (const HostId& h : g.members) {
      entry.members.push_back({h, snapshot.degree(snapshot.index_of(h))});
    }
    std::sort(entry.members.begin(), entry.members.end(),
              [](const auto& x, const auto& y) { return x.host < y.host; });
    entry.avg_connections =
        static_cast<double>(graph.degree_sum(g.id)) / static_cast<double>(g.members.size());
    for (GroupId other : graph.neighbors(g.id)) {
      doc.inter_group.push_back({g.id, other,
                                 static_cast<double>(graph.cp(g.id, other)) /
                                     static_cast<double>(g.members.size())});
    }
    doc.groups.push_back(std::move(entry));
  }
  return doc;
}

std::string WritePartitioningDocument(const PartitioningDocument& doc) {
  json j;
  j["snapshot_label"] = doc.snapshot_label;
  if (doc.config) {
    const auto& c = *doc.config;
    j["config"] = {{"alpha", c.formation.alpha}, {"beta", c.merge.beta},
                   {"k_hi", c.merge.k_hi},       {"merge", c.merge_enabled},
                   {"normalization", NormalizationName(c.merge.normalization)},
                   {"s_hi", c.merge.s_hi},       {"s_lo", c.merge.s_lo}};
  }
  json groups = json::array();
  for (const auto& g : doc.groups) {
    json members = json::array();
    for (const auto& m : g.members) {
      members.push_back({{"connections", m.connections}, {"host", m.host.str()}});
    }
    groups.push_back({{"avg_connections", g.avg_connections},
                      {"id", g.id.value},
                      {"k_value", g.k_value},
                      {"members", std::move(members)}});
  }
  j["groups"] = std::move(groups);
  json inter = json::array();
  for (const auto& e : doc.inter_group) {
    inter.push_back({{"avg_connections", e.avg_connections}, {"from", e.from.value}, {"to", e.to.value}});
  }
  j["inter_group"] = std::move(inter);
  return Dump(j);
}

PartitioningDocument ReadPartitioningDocument(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("partitioning document is not valid JSON: ") + e.what());
  }
  PartitioningDocument doc;
  try {
    doc.snapshot_label = j.value("snapshot_label", std::string{});
    if (j.contains("config")) {
      const auto& c = j.at("config");
      PipelineConfig config;
      config.formation.alpha = c.at("alpha").get<double>();
      config.merge.beta = c.at("beta").get<double>();
      config.merge.s_hi = c.at("s_hi").get<double>();
      config.merge.s_lo = c.at("s_lo").get<double>();
      config.merge.k_hi = c.at("k_hi").get<std::uint32_t>();
      config.merge_enabled = c.value("merge", true);
      config.merge.normalization = NormalizationFromName(c.value("normalization", "group_size"));
      doc.config = config;
    }
    for (const auto& g : j.at("groups")) {
      PartitioningDocument::GroupEntry entry;
      entry.id = GroupId{g.at("id").get<std::uint32_t>()};
      entry.k_value = g.value("k_value", 0u);
      entry.avg_connections = g.value("avg_connections", 0.0);
      for (const auto& m : g.at("members")) {
        if (m.is_string()) {
          entry.members.push_back({HostId(m.get<std::string>()), 0});
        } else {
          entry.members.push_back(
              {HostId(m.at("host").get<std::string>()), m.value("connections", std::uint64_t{0})});
        }
      }
      std::sort(entry.members.begin(), entry.members.end(),
                [](const auto& x, const auto& y) { return x.host < y.host; });
      doc.groups.push_back(std::move(entry));
    }
    if (j.contains("inter_group")) {
      for (const auto& e : j.at("inter_group")) {
        doc.inter_group.push_back({GroupId{e.at("from").get<std::uint32_t>()},
                                   GroupId{e.at("to").get<std::uint32_t>()},
                                   e.at("avg_connections").get<double>()});
      }
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed partitioning document: ") + e.what());
  }
  std::sort(doc.groups.begin(), doc.groups.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(doc.inter_group.begin(), doc.inter_group.end(), [](const auto& a, const auto& b) {
    return std::pair(a.from, a.to) < std::pair(b.from, b.to);
  });
  return doc;
}

std::string WriteCorrelationDocument(const CorrelationResult& result) {
  json mapping = json::array();
  for (const auto& [current, match] : result.matches) {
    mapping.push_back({{"current", current.value},
                       {"prior", match.prior.value},
                       {"score", match.score},
                       {"step", static_cast<int>(match.step)}});
  }
  json j;
  j["h_same"] = Hosts(result.h_same);
  j["mapping"] = std::move(mapping);
  j["new_groups"] = GroupIds(result.new_groups);
  j["retired_groups"] = GroupIds(result.retired_groups);
  return Dump(j);
}

std::string WriteDiffDocument(const DiffReport& diff) {
  json changed = json::array();
  for (const auto& d : diff.changed) {
    changed.push_back({{"added", Hosts(d.added)},
                       {"current_id", d.current_id.value},
                       {"k_after", d.k_after},
                       {"k_before", d.k_before},
                       {"prior_id", d.prior_id.value},
                       {"removed", Hosts(d.removed)}});
  }
  auto groups = [](const std::vector<Group>& list) {
    json out = json::array();
    for (const Group& g : list) out.push_back({{"id", g.id.value}, {"members", Hosts(g.members)}});
    return out;
  };
  json j;
  j["changed"] = std::move(changed);
  j["new_groups"] = groups(diff.new_groups);
  j["retired_groups"] = groups(diff.retired_groups);
  return Dump(j);
}

std::string WriteRandCsv(const RandCounts& c) {
  return "ss,sd,ds,dd,r\n" + std::to_string(c.ss) + "," + std::to_string(c.sd) + "," +
         std::to_string(c.ds) + "," + std::to_string(c.dd) + "," + Fixed(c.r, 4) + "\n";
}

std::string WriteReport(const PartitioningDocument& doc) {
  std::map<GroupId, std::vector<const PartitioningDocument::InterGroup*>> comm;
  for (const auto& e : doc.inter_group) comm[e.from].push_back(&e);
  std::ostringstream out;
  bool first = true;
  for (const auto& g : doc.groups) {
    if (!first) out << "\n";
    first = false;
    out << "Group " << g.id.value << " (" << g.k_value << ")\n";
    for (const auto& m : g.members) out << "  " << m.host.str() << " " << m.connections << "\n";
    for (const auto* e : comm[g.id]) {
      out << "  comm with " << e->to.value << ": " << Fixed(e->avg_connections, 1) << "\n";
    }
  }
  return out.str();
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return buf.str();
}

void WriteFile(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("error while writing '" + path + "'");
}

}  // namespace rolegroup
