#pragma once

#include "d1lc/config.hpp"
#include "d1lc/instance.hpp"
#include "d1lc/partition.hpp"
#include "d1lc/report.hpp"

namespace d1lc {

struct PipelineOutput {
  ColoringState state;
  RunReport report;
};

/// Places the instance on a fresh simulator, runs the reduction (mid-degree
/// coloring only when cfg.partition is off) and verifies the result.
/// `hooks.sim` is ignored.
PipelineOutput run_pipeline(const D1LCInstance& inst, const Config& cfg, const ReduceOptions& hooks = {});

}  // namespace d1lc
