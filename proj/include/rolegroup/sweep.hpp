#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rolegroup/pipeline.hpp"
#include "rolegroup/snapshot.hpp"

namespace rolegroup {

enum class SweepParameter { kSLo, kKHi };

const char* SweepParameterName(SweepParameter p);
// Accepts "s_lo" and "k_hi". Throws ValidationError otherwise.
SweepParameter ParseSweepParameter(const std::string& name);

struct SweepRange {
  double from = 0.0;
  double to = 0.0;
  double step = 1.0;
};

struct SweepPoint {
  double value = 0.0;
  std::size_t groups = 0;
};

// from, from + step, ... up to and including `to`.
std::vector<double> SweepValues(const SweepRange& range);

// One full grouping run per sweep value with every other setting taken from
// `base`. Rows come back in value order.
std::vector<SweepPoint> Sweep(const ConnectionSnapshot& snapshot, SweepParameter parameter,
                              const SweepRange& range, const PipelineConfig& base = {});

// "param,value,groups" header plus one row per point.
std::string WriteSweepCsv(SweepParameter parameter, const std::vector<SweepPoint>& points);

}  // namespace rolegroup
