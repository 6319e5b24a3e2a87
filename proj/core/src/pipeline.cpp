#include "d1lc/pipeline.hpp"

#include <chrono>

namespace d1lc {

PipelineOutput run_pipeline(const D1LCInstance& inst, const Config& cfg, const ReduceOptions& hooks) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t n = inst.node_count();
  MpcSimulator sim(MpcConfig::make(cfg, std::max<std::uint64_t>(n, 1), inst.words()));
  const Placement placement = assign_machines(inst, sim.config());
  sim.note_load(placement.peak_load);

  ReduceOptions options = hooks;
  options.sim = &sim;
  ReduceResult res = low_space_color_reduce(inst, cfg, options);

  PipelineOutput out;
  RunReport& r = out.report;
  r.verdict = verify_coloring(inst, res.state);
  r.mode = mode_name(cfg.mode);
  r.partition = cfg.partition;
  r.nodes = n;
  r.edges = inst.graph.edge_count();
  r.max_degree = inst.graph.max_degree();
  r.local_space_words = sim.config().local_space_words;
  r.machine_count = sim.config().machine_count;
  r.initial_load = placement.peak_load;
  r.stats = sim.account();
  r.transcript_hash = sim.transcript_hash();
  r.coloring_hash = coloring_hash(res.state);
  r.phases = std::move(res.phases);
  r.levels = std::move(res.levels);
  r.trace = std::move(res.trace);
  r.depth = res.depth;
  r.depth_bound = cfg.partition ? recursion_depth_bound(cfg, n) : 0;
  r.final_greedy = res.final_greedy;
  r.warnings = std::move(res.warnings);
  r.config = describe(cfg);
  r.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.state = std::move(res.state);
  return out;
}

}  // namespace d1lc
