#include "rolegroup/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <future>

#include "rolegroup/error.hpp"

namespace rolegroup {

namespace {

PipelineConfig ConfigAt(const PipelineConfig& base, SweepParameter parameter, double value) {
  PipelineConfig config = base;
  if (parameter == SweepParameter::kSLo) {
    config.merge.s_lo = value;
  } else {
    config.merge.k_hi = static_cast<std::uint32_t>(value);
  }
  return config;
}

std::string FormatValue(double v) {
  char buf[64];
  if (v == std::floor(v) && std::fabs(v) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.10g", v);
  }
  return buf;
}

}  // namespace

const char* SweepParameterName(SweepParameter p) {
  return p == SweepParameter::kSLo ? "s_lo" : "k_hi";
}

SweepParameter ParseSweepParameter(const std::string& name) {
  if (name == "s_lo") return SweepParameter::kSLo;
  if (name == "k_hi") return SweepParameter::kKHi;
  throw ValidationError("unknown sweep parameter '" + name + "' (expected s_lo or k_hi)");
}

std::vector<double> SweepValues(const SweepRange& range) {
  if (!std::isfinite(range.from) || !std::isfinite(range.to) || !std::isfinite(range.step)) {
    throw ValidationError("sweep range must be finite");
  }
  if (range.step <= 0.0) throw ValidationError("sweep step must be positive");
  if (range.to < range.from) throw ValidationError("sweep range is empty: to < from");
  const auto count = static_cast<std::size_t>(std::floor((range.to - range.from) / range.step + 1e-9)) + 1;
  std::vector<double> values;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    values.push_back(range.from + static_cast<double>(i) * range.step);
  }
  return values;
}

std::vector<SweepPoint> Sweep(const ConnectionSnapshot& snapshot, SweepParameter parameter,
                              const SweepRange& range, const PipelineConfig& base) {
  const auto values = SweepValues(range);
  for (double v : values) {
    if (parameter == SweepParameter::kKHi && (v < 0.0 || v != std::floor(v))) {
      throw ValidationError("k_hi sweep values must be non-negative integers, got " + FormatValue(v));
    }
    ConfigAt(base, parameter, v).Validate();
  }
  std::vector<std::future<std::size_t>> runs;
  runs.reserve(values.size());
  for (double v : values) {
    runs.push_back(std::async(std::launch::async, [&snapshot, config = ConfigAt(base, parameter, v)] {
      return RunPipeline(snapshot, config).groups.size();
    }));
  }
  std::vector<SweepPoint> points;
  points.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) points.push_back({values[i], runs[i].get()});
  return points;
}

std::string WriteSweepCsv(SweepParameter parameter, const std::vector<SweepPoint>& points) {
  std::string out = "param,value,groups\n";
  for (const auto& p : points) {
    out += std::string(SweepParameterName(parameter)) + "," + FormatValue(p.value) + "," +
           std::to_string(p.groups) + "\n";
  }
  return out;
}

}  // namespace rolegroup
