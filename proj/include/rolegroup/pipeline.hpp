#pragma once

#include "rolegroup/formation.hpp"
#include "rolegroup/merging.hpp"

namespace rolegroup {

struct PipelineConfig {
  FormationConfig formation;
  MergeConfig merge;
  bool merge_enabled = true;

  void Validate() const {
    formation.Validate();
    merge.Validate();
  }
};

// Formation followed, unless disabled, by the merge pass.
inline Partitioning RunPipeline(const ConnectionSnapshot& snapshot, const PipelineConfig& config) {
  config.Validate();
  Partitioning p = FormGroups(snapshot, config.formation);
  if (config.merge_enabled) p = MergePass(p, snapshot, config.merge);
  return p;
}

}  // namespace rolegroup
