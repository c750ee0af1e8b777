#include "rolegroup/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <map>

#include "CLI11.hpp"
#include "json.hpp"
#include "rolegroup/correlation.hpp"
#include "rolegroup/error.hpp"
#include "rolegroup/evaluation.hpp"
#include "rolegroup/io.hpp"
#include "rolegroup/pipeline.hpp"
#include "rolegroup/sweep.hpp"
#include "rolegroup/synth.hpp"

namespace rolegroup {

namespace {

struct GroupingFlags {
  PipelineConfig config;
  bool no_merge = false;
  std::string normalization = "group_size";

  void Attach(CLI::App& cmd) {
    cmd.add_option("--alpha", config.formation.alpha, "Bootstrap factor")->capture_default_str();
    cmd.add_option("--beta", config.merge.beta, "Connection tolerance for merging")->capture_default_str();
    cmd.add_option("--s-hi", config.merge.s_hi, "Similarity threshold for K >= k_hi")->capture_default_str();
    cmd.add_option("--s-lo", config.merge.s_lo, "Similarity threshold for K < k_hi")->capture_default_str();
    cmd.add_option("--k-hi", config.merge.k_hi, "K cut-off between the two thresholds")->capture_default_str();
    cmd.add_option("--normalization", normalization, "Similarity denominator")
        ->check(CLI::IsMember({"group_size", "neighbor_host_count"}))
        ->capture_default_str();
    cmd.add_flag("--no-merge", no_merge, "Skip the merge phase");
  }

  PipelineConfig Resolve() const {
    PipelineConfig c = config;
    c.merge_enabled = !no_merge;
    c.merge.normalization = normalization == "group_size" ? SimilarityNormalization::kGroupSize
                                                          : SimilarityNormalization::kNeighborHostCount;
    c.Validate();
    return c;
  }
};

std::string Stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

ConnectionSnapshot LoadEdges(const std::string& path) {
  return ParseEdgeList(ReadFile(path), Stem(path));
}

class Emitter {
 public:
  Emitter(std::ostream& out, const std::string& path) : out_(out), path_(path) {}
  void operator()(const std::string& text) const {
    if (path_.empty()) {
      out_ << text;
    } else {
      WriteFile(path_, text);
    }
  }

 private:
  std::ostream& out_;
  const std::string& path_;
};

// Re-expresses `result` in the ids written to the output partitioning.
CorrelationResult ToOutputIds(const CorrelationResult& result, const Partitioning& curr,
                              const Partitioning& renamed) {
  std::map<HostId, GroupId> owner;
  for (const Group& g : renamed.groups) {
    owner.emplace(*std::min_element(g.members.begin(), g.members.end()), g.id);
  }
  std::map<GroupId, GroupId> id_of;
  for (const Group& g : curr.groups) {
    id_of[g.id] = owner.at(*std::min_element(g.members.begin(), g.members.end()));
  }
  CorrelationResult out;
  out.h_same = result.h_same;
  out.retired_groups = result.retired_groups;
  for (const auto& [current, match] : result.matches) out.matches.emplace(id_of.at(current), match);
  for (GroupId id : result.new_groups) out.new_groups.push_back(id_of.at(id));
  std::sort(out.new_groups.begin(), out.new_groups.end());
  return out;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classify hosts into roles from their connection patterns", "rolegroup"};
  app.require_subcommand(1);

  std::string output;

  auto* group = app.add_subcommand("group", "Form and merge role groups for one edge list");
  std::string group_edges;
  GroupingFlags group_flags;
  group->add_option("edges", group_edges, "Edge-list file")->required();
  group_flags.Attach(*group);
  group->add_option("-o,--output", output, "Write the document here instead of stdout");

  auto* correlate = app.add_subcommand("correlate", "Group a new run and carry over prior group ids");
  std::string prev_edges, prev_partitioning, curr_edges, partitioning_output;
  GroupingFlags corr_flags;
  CorrelationConfig corr_config;
  correlate->add_option("prev-edges", prev_edges, "Prior edge-list file")->required();
  correlate->add_option("prev-partitioning", prev_partitioning, "Prior partitioning document")->required();
  correlate->add_option("curr-edges", curr_edges, "Current edge-list file")->required();
  corr_flags.Attach(*correlate);
  correlate->add_option("--t-hi", corr_config.t_hi, "Relative size tolerance")->capture_default_str();
  correlate->add_option("--sim-threshold", corr_config.sim_threshold, "First-step similarity threshold")
      ->capture_default_str();
  correlate->add_option("--step2-threshold", corr_config.step2_threshold, "Second-step similarity threshold")
      ->capture_default_str();
  correlate->add_option("-o,--output", output, "Write the combined document here instead of stdout");
  correlate->add_option("--partitioning-output", partitioning_output,
                        "Also write the renumbered partitioning document here");

  auto* evaluate = app.add_subcommand("evaluate", "Rand statistic against a reference partitioning");
  std::string eval_computed, eval_reference;
  evaluate->add_option("partitioning", eval_computed, "Computed partitioning document")->required();
  evaluate->add_option("ground-truth", eval_reference, "Reference partitioning document")->required();
  evaluate->add_option("-o,--output", output, "Write the CSV here instead of stdout");

  auto* report = app.add_subcommand("report", "Text report of a partitioning document");
  std::string report_input;
  report->add_option("partitioning", report_input, "Partitioning document")->required();
  report->add_option("-o,--output", output, "Write the report here instead of stdout");

  auto* sweep = app.add_subcommand("sweep", "Group count as one threshold varies");
  std::string sweep_edges, sweep_param = "s_lo";
  SweepRange range{5.0, 75.0, 5.0};
  GroupingFlags sweep_flags;
  sweep->add_option("edges", sweep_edges, "Edge-list file")->required();
  sweep->add_option("--param", sweep_param, "s_lo or k_hi")->capture_default_str();
  sweep->add_option("--from", range.from, "First value")->capture_default_str();
  sweep->add_option("--to", range.to, "Last value (inclusive)")->capture_default_str();
  sweep->add_option("--step", range.step, "Increment")->capture_default_str();
  sweep_flags.Attach(*sweep);
  sweep->add_option("-o,--output", output, "Write the CSV here instead of stdout");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic edge list");
  synth->require_subcommand(1);
  std::string truth_output;
  Figure1Spec fig;
  auto* figure1 = synth->add_subcommand("figure1", "Two client populations sharing mail and web servers");
  figure1->add_option("--m", fig.sales, "Number of sales hosts")->capture_default_str();
  figure1->add_option("--n", fig.eng, "Number of engineering hosts")->capture_default_str();
  figure1->add_option("-o,--output", output, "Write the edge list here instead of stdout");
  figure1->add_option("--truth", truth_output, "Write the reference partitioning here");
  RolesSpec roles_spec;
  auto* roles = synth->add_subcommand("roles", "Seeded role-structured network");
  roles->add_option("--roles", roles_spec.roles, "Number of roles")->capture_default_str();
  roles->add_option("--min-hosts", roles_spec.min_hosts, "Fewest clients per role")->capture_default_str();
  roles->add_option("--max-hosts", roles_spec.max_hosts, "Most clients per role")->capture_default_str();
  roles->add_option("--servers", roles_spec.servers_per_role, "Servers per role")->capture_default_str();
  roles->add_option("--share", roles_spec.share_probability, "Cross-role server probability")
      ->capture_default_str();
  roles->add_option("--seed", roles_spec.seed, "Generator seed")->capture_default_str();
  roles->add_option("-o,--output", output, "Write the edge list here instead of stdout");
  roles->add_option("--truth", truth_output, "Write the reference partitioning here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return static_cast<int>(ExitCode::kSuccess);
    }
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kValidation);
  }

  const Emitter emit(out, output);
  try {
    if (group->parsed()) {
      const PipelineConfig config = group_flags.Resolve();
      const ConnectionSnapshot snapshot = LoadEdges(group_edges);
      const Partitioning p = RunPipeline(snapshot, config);
      emit(WritePartitioningDocument(MakePartitioningDocument(p, snapshot, config)));
    } else if (correlate->parsed()) {
      const PipelineConfig config = corr_flags.Resolve();
      corr_config.Validate();
      const ConnectionSnapshot prev = LoadEdges(prev_edges);
      Partitioning prior = ReadPartitioningDocument(ReadFile(prev_partitioning)).ToPartitioning();
      ValidatePartitioning(prior, prev);
      const ConnectionSnapshot curr = LoadEdges(curr_edges);
      const Partitioning current = RunPipeline(curr, config);
      const CorrelationResult result = Correlate({prev, prior}, {curr, current}, corr_config);
      const Partitioning renamed = ApplyCorrelation(current, prior, result);
      const CorrelationResult shown = ToOutputIds(result, current, renamed);
      const std::string doc = WritePartitioningDocument(MakePartitioningDocument(renamed, curr, config));
      nlohmann::json combined;
      combined["correlation"] = nlohmann::json::parse(WriteCorrelationDocument(shown));
      combined["diff"] = nlohmann::json::parse(WriteDiffDocument(PartitionDiff(prior, renamed, shown)));
      combined["partitioning"] = nlohmann::json::parse(doc);
      emit(combined.dump(2) + "\n");
      if (!partitioning_output.empty()) WriteFile(partitioning_output, doc);
    } else if (evaluate->parsed()) {
      const Partitioning p = ReadPartitioningDocument(ReadFile(eval_computed)).ToPartitioning();
      const Partitioning p_star = ReadPartitioningDocument(ReadFile(eval_reference)).ToPartitioning();
      emit(WriteRandCsv(RandStatistic(p, p_star)));
    } else if (report->parsed()) {
      emit(WriteReport(ReadPartitioningDocument(ReadFile(report_input))));
    } else if (sweep->parsed()) {
      const SweepParameter param = ParseSweepParameter(sweep_param);
      const PipelineConfig config = sweep_flags.Resolve();
      const ConnectionSnapshot snapshot = LoadEdges(sweep_edges);
      emit(WriteSweepCsv(param, Sweep(snapshot, param, range, config)));
    } else if (synth->parsed()) {
      const SynthSpec spec = figure1->parsed() ? SynthSpec{fig} : SynthSpec{roles_spec};
      const SynthNetwork net = Synthesize(spec);
      emit(WriteEdgeList(net.snapshot));
      if (!truth_output.empty()) {
        WriteFile(truth_output,
                  WritePartitioningDocument(MakePartitioningDocument(net.ground_truth, net.snapshot)));
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  }
  return static_cast<int>(ExitCode::kSuccess);
}

}  // namespace rolegroup
