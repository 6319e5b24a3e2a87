#include "d1lc/local_procs.hpp"

#include "d1lc/error.hpp"
#include "d1lc/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace d1lc {

namespace {

std::vector<NodeId> uncolored_of(const ColoringState& st, std::span<const NodeId> nodes) {
  std::vector<NodeId> out;
  for (NodeId v : nodes) {
    if (st.uncolored(v)) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint64_t max_palette(const D1LCInstance& inst, std::span<const NodeId> nodes) {
  std::uint64_t p = 1;
  for (NodeId v : nodes) p = std::max<std::uint64_t>(p, inst.palette(v).size());
  return p;
}

std::vector<std::int32_t> positions(std::size_t n, std::span<const NodeId> nodes) {
  std::vector<std::int32_t> pos(n, -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) pos[nodes[i]] = static_cast<std::int32_t>(i);
  return pos;
}

// Moves a uniform k-subset of `r` into its first k slots.
void partial_shuffle(std::vector<Color>& r, std::size_t k, NodeId v, RandomTape& tape) {
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(tape.uniform(v, r.size() - i));
    std::swap(r[i], r[j]);
  }
}

std::vector<TrialOutcome> multi_trial_impl(const D1LCInstance& inst, ColoringState& st,
                                           std::span<const NodeId> participants, std::uint64_t x, RandomTape& tape,
                                           bool cap) {
  if (x == 0) throw Error(Errc::BadParameters, "multi_trial needs x >= 1");
  const auto active = uncolored_of(st, participants);
  const auto pos = positions(inst.node_count(), active);
  std::vector<std::vector<Color>> sample(active.size());
  for (std::size_t i = 0; i < active.size(); ++i) {
    NodeId v = active[i];
    auto r = residual_palette(inst, st, v);
    std::uint64_t xv = x;
    if (xv > r.size()) {
      if (!cap) {
        throw Error(Errc::XTooLarge,
                    "x = " + std::to_string(x) + " exceeds residual palette size " + std::to_string(r.size()),
                    inst.labels[v]);
      }
      xv = r.size();
    }
    partial_shuffle(r, xv, v, tape);
    r.resize(xv);
    std::sort(r.begin(), r.end());
    sample[i] = std::move(r);
  }
  std::vector<TrialOutcome> out;
  out.reserve(active.size());
  for (std::size_t i = 0; i < active.size(); ++i) {
    NodeId v = active[i];
    TrialOutcome o{v, false, 0};
    for (Color c : sample[i]) {
      bool clash = false;
      for (NodeId u : inst.graph.neighbors(v)) {
        const auto j = pos[u];
        if (j >= 0 && std::binary_search(sample[j].begin(), sample[j].end(), c)) {
          clash = true;
          break;
        }
      }
      if (!clash) {
        o.colored = true;
        o.color = c;
        break;
      }
    }
    out.push_back(o);
  }
  for (const auto& o : out) {
    if (o.colored) st.set_color(o.node, o.color);
  }
  return out;
}

void run_phase(const D1LCInstance& inst, ColoringState& st, std::vector<char>& marked, LevelContext& ctx,
               Phase phase) {
  if (phase.subjects.empty()) return;
  auto rec = ctx.runner->run(inst, phase, st, marked);
  if (ctx.records) ctx.records->push_back(std::move(rec));
  if (ctx.cfg->debug_checks) check_partial_coloring(inst, st);
}

SuccessContext success_context(const LevelContext& ctx) {
  SuccessContext sc;
  sc.threshold = ctx.threshold;
  sc.ell = ctx.ell;
  return sc;
}

Phase base_phase(const LevelContext& ctx, const std::string& name, Subroutine kind, std::vector<NodeId> subjects) {
  Phase p;
  p.name = ctx.prefix + name;
  p.kind = kind;
  p.radius = ctx.cfg->radius;
  p.readers = subjects;
  p.subjects = std::move(subjects);
  return p;
}

Phase multi_trial_phase(const D1LCInstance& inst, const LevelContext& ctx, const std::string& name, Subroutine kind,
                        const std::vector<NodeId>& active, std::uint64_t x, unsigned reps, const SlackBound& bound) {
  const std::uint64_t pmax = max_palette(inst, active);
  const std::uint64_t xcap = std::min(x, pmax);
  Phase p = base_phase(ctx, name, kind, active);
  p.bits_per_node = reps * xcap * ctx.cfg->rejection_tries * bits_for(pmax);
  p.local_rounds = 2 * reps;
  p.words_per_message = static_cast<unsigned>(xcap);
  p.step = [&inst, active, xcap, reps](ColoringState& st, std::vector<char>&, RandomTape& tape) {
    for (unsigned r = 0; r < reps; ++r) multi_trial_impl(inst, st, active, xcap, tape, true);
  };
  auto sc = success_context(ctx);
  sc.bound = bound;
  p.ssp = ssp_wsp_for(kind, *ctx.cfg, sc).ssp;
  return p;
}

std::vector<NodeId> keep_if(const ColoringState& st, const std::vector<NodeId>& nodes,
                            const std::function<bool(NodeId)>& pred) {
  std::vector<NodeId> out;
  for (NodeId v : nodes) {
    if (st.uncolored(v) && pred(v)) out.push_back(v);
  }
  return out;
}

void run_slack_color(const D1LCInstance& inst, ColoringState& st, std::vector<char>& marked,
                     std::vector<NodeId> active, const SlackColorPlan& plan, LevelContext& ctx) {
  const Config& cfg = *ctx.cfg;
  if (active.empty()) return;
  const std::uint64_t pmax = max_palette(inst, active);

  Phase trc = base_phase(ctx, "slack_color.trc", Subroutine::TryRandomColor, active);
  trc.bits_per_node = static_cast<std::uint64_t>(cfg.trc_rounds) * cfg.rejection_tries * bits_for(pmax);
  trc.local_rounds = 2 * cfg.trc_rounds;
  trc.step = [&inst, active, rounds = cfg.trc_rounds](ColoringState& s, std::vector<char>&, RandomTape& tape) {
    for (unsigned r = 0; r < rounds; ++r) try_random_color(inst, s, active, tape);
  };
  trc.ssp = ssp_wsp_for(Subroutine::TryRandomColor, cfg, success_context(ctx)).ssp;
  run_phase(inst, st, marked, ctx, std::move(trc));
  active = keep_if(st, active, [&](NodeId v) {
    return compute_slack(inst, st, v) >= 2 * static_cast<std::int64_t>(residual_degree(inst, st, v));
  });

  for (unsigned i = 0; i < plan.first_loop && !active.empty(); ++i) {
    const std::uint64_t x = tower(i);
    SlackBound bound{2, Rational(mpz_class(static_cast<unsigned long>(x))), plan.rho, plan.kappa};
    run_phase(inst, st, marked, ctx,
              multi_trial_phase(inst, ctx, "slack_color.loop1[" + std::to_string(i) + "]",
                                Subroutine::MultiTrialFirstLoop, active, x, 2, bound));
    active = keep_if(st, active, [&](NodeId v) {
      return slack_bound_holds(bound, residual_degree(inst, st, v), compute_slack(inst, st, v));
    });
  }

  for (unsigned i = 1; i <= plan.second_loop && !active.empty(); ++i) {
    const std::uint64_t x = std::max<std::uint64_t>(1, floor_pow(plan.rho, plan.kappa * i));
    Rational next = plan.kappa * (i + 1);
    SlackBound bound{plan.rho, next, plan.rho, 1};
    run_phase(inst, st, marked, ctx,
              multi_trial_phase(inst, ctx, "slack_color.loop2[" + std::to_string(i) + "]",
                                Subroutine::MultiTrialSecondLoop, active, x, 3, bound));
    active = keep_if(st, active, [&](NodeId v) {
      return slack_bound_holds(bound, residual_degree(inst, st, v), compute_slack(inst, st, v));
    });
  }

  if (!active.empty()) {
    run_phase(inst, st, marked, ctx,
              multi_trial_phase(inst, ctx, "slack_color.final", Subroutine::MultiTrialFinal, active,
                                std::max<std::uint64_t>(1, plan.rho), 1, SlackBound{}));
  }
}

void charge(LevelContext& ctx, const std::string& primitive, std::uint64_t rounds) {
  if (ctx.sim) ctx.sim->charge(primitive, rounds);
}

}  // namespace

std::vector<TrialOutcome> try_random_color(const D1LCInstance& inst, ColoringState& st,
                                           std::span<const NodeId> participants, RandomTape& tape) {
  const auto active = uncolored_of(st, participants);
  const auto pos = positions(inst.node_count(), active);
  std::vector<Color> pick(active.size(), 0);
  std::vector<char> has(active.size(), 0);
  for (std::size_t i = 0; i < active.size(); ++i) {
    const auto r = residual_palette(inst, st, active[i]);
    if (r.empty()) continue;
    pick[i] = r[tape.uniform(active[i], r.size())];
    has[i] = 1;
  }
  std::vector<TrialOutcome> out;
  out.reserve(active.size());
  for (std::size_t i = 0; i < active.size(); ++i) {
    NodeId v = active[i];
    bool ok = has[i] != 0;
    for (NodeId u : inst.graph.neighbors(v)) {
      if (!ok) break;
      const auto j = pos[u];
      if (j >= 0 && has[j] && pick[j] == pick[i]) ok = false;
    }
    out.push_back({v, ok, ok ? pick[i] : 0});
  }
  for (const auto& o : out) {
    if (o.colored) st.set_color(o.node, o.color);
  }
  return out;
}

std::vector<TrialOutcome> multi_trial(const D1LCInstance& inst, ColoringState& st,
                                      std::span<const NodeId> participants, std::uint64_t x, RandomTape& tape) {
  return multi_trial_impl(inst, st, participants, x, tape, false);
}

std::vector<TrialOutcome> generate_slack(const D1LCInstance& inst, ColoringState& st,
                                         std::span<const NodeId> participants, RandomTape& tape) {
  const auto active = uncolored_of(st, participants);
  std::vector<NodeId> sampled;
  for (NodeId v : active) {
    if (tape.read(v, kGenerateSlackBits) == 0) sampled.push_back(v);
  }
  const auto tried = try_random_color(inst, st, sampled, tape);
  std::vector<TrialOutcome> out;
  out.reserve(active.size());
  std::size_t j = 0;
  for (NodeId v : active) {
    if (j < tried.size() && tried[j].node == v) {
      out.push_back(tried[j++]);
    } else {
      out.push_back({v, false, 0});
    }
  }
  return out;
}

std::vector<TrialOutcome> synch_color_trial(const D1LCInstance& inst, ColoringState& st,
                                            const std::vector<CliqueRoles>& roles, std::span<const char> marked,
                                            RandomTape& tape) {
  const std::size_t n = inst.node_count();
  std::vector<char> part(n, 0);
  std::vector<char> has(n, 0);
  std::vector<Color> prop(n, 0);
  std::vector<NodeId> all;
  for (const auto& role : roles) {
    std::vector<NodeId> in;
    for (NodeId v : role.inliers) {
      if (st.uncolored(v) && !(v < marked.size() && marked[v])) in.push_back(v);
    }
    if (in.empty()) continue;
    std::sort(in.begin(), in.end());
    for (NodeId v : in) {
      if (!inst.graph.adjacent(role.leader, v)) {
        throw Error(Errc::InlierNotAdjacent, "inlier is not adjacent to its leader", inst.labels[v]);
      }
    }
    auto r = residual_palette(inst, st, role.leader);
    const std::size_t k = std::min(in.size(), r.size());
    partial_shuffle(r, k, role.leader, tape);
    for (std::size_t i = 0; i < in.size(); ++i) {
      part[in[i]] = 1;
      all.push_back(in[i]);
      if (i < k) {
        has[in[i]] = 1;
        prop[in[i]] = r[i];
      }
    }
  }
  std::sort(all.begin(), all.end());
  std::vector<TrialOutcome> out;
  out.reserve(all.size());
  for (NodeId v : all) {
    bool ok = has[v] != 0;
    for (NodeId u : inst.graph.neighbors(v)) {
      if (!ok) break;
      if (part[u] && has[u] && prop[u] == prop[v]) ok = false;
    }
    if (ok) ok = inst.palette(v).contains(prop[v]) && [&] {
      for (NodeId u : inst.graph.neighbors(v)) {
        if (st.colored(u) && st.color(u) == prop[v]) return false;
      }
      return true;
    }();
    out.push_back({v, ok, ok ? prop[v] : 0});
  }
  for (const auto& o : out) {
    if (o.colored) st.set_color(o.node, o.color);
  }
  return out;
}

std::uint64_t put_aside_threshold(const D1LCInstance& inst, const ColoringState& st, const CliqueRoles& role,
                                  std::uint64_t ell, std::string* warning) {
  const std::uint64_t full = std::uint64_t{1} << kPutAsideBits;
  std::uint64_t dc = residual_degree(inst, st, role.leader);
  for (NodeId v : role.outliers) dc = std::max<std::uint64_t>(dc, residual_degree(inst, st, v));
  for (NodeId v : role.inliers) dc = std::max<std::uint64_t>(dc, residual_degree(inst, st, v));
  dc = std::max<std::uint64_t>(dc, 1);
  // floor(ell^2 2^16 / (48 dc))
  mpz_class k = mpz_class(static_cast<unsigned long>(ell)) * static_cast<unsigned long>(ell) * full;
  k /= mpz_class(static_cast<unsigned long>(48 * dc));
  if (k <= full) return k.get_ui();
  if (warning) {
    *warning = "ProbabilityOutOfRange: put-aside probability " + std::to_string(ell * ell) + "/" +
               std::to_string(48 * dc) + " clamped to 1 (leader " + std::to_string(inst.labels[role.leader]) + ")";
  }
  return full;
}

PutAsideResult put_aside(const D1LCInstance& inst, const ColoringState& st, const std::vector<CliqueRoles>& roles,
                         std::uint64_t ell, RandomTape& tape) {
  PutAsideResult res;
  std::vector<char> sampled(inst.node_count(), 0);
  for (const auto& role : roles) {
    if (!role.low_slack) continue;
    std::string w;
    const std::uint64_t threshold = put_aside_threshold(inst, st, role, ell, &w);
    if (!w.empty()) res.warnings.push_back(std::move(w));
    for (NodeId v : role.inliers) {
      if (!st.uncolored(v)) continue;
      if (tape.read(v, kPutAsideBits) < threshold) sampled[v] = 1;
    }
  }
  for (NodeId v = 0; v < sampled.size(); ++v) {
    if (!sampled[v]) continue;
    bool alone = true;
    for (NodeId u : inst.graph.neighbors(v)) {
      if (sampled[u]) {
        alone = false;
        break;
      }
    }
    if (alone) res.nodes.push_back(v);
  }
  return res;
}

std::uint64_t log_star(std::uint64_t x) noexcept {
  double v = static_cast<double>(x);
  std::uint64_t count = 0;
  while (v > 1.0) {
    v = std::log2(v);
    ++count;
  }
  return count;
}

std::uint64_t tower(unsigned i) noexcept {
  std::uint64_t t = 1;
  for (unsigned j = 0; j < i; ++j) {
    if (t >= 64) return std::numeric_limits<std::uint64_t>::max();
    t = std::uint64_t{1} << t;
  }
  return t;
}

SlackColorPlan plan_slack_color(std::uint64_t s_min, const Rational& kappa) {
  if (s_min <= 1) throw Error(Errc::BadParameters, "slack_color needs s_min > 1");
  if (kappa > 1 || kappa * mpz_class(static_cast<unsigned long>(s_min)) <= 1) {
    throw Error(Errc::BadParameters, "slack_color needs 1/s_min < kappa <= 1, got kappa = " + to_string(kappa));
  }
  SlackColorPlan plan;
  plan.s_min = s_min;
  plan.kappa = kappa;
  Rational e = 1 / (1 + kappa);
  plan.rho = std::max<std::uint64_t>(1, floor_pow(s_min, e));
  plan.first_loop = static_cast<unsigned>(log_star(plan.rho)) + 1;
  mpz_class inv_ceil;
  mpz_cdiv_q(inv_ceil.get_mpz_t(), kappa.get_den_mpz_t(), kappa.get_num_mpz_t());
  plan.second_loop = static_cast<unsigned>(inv_ceil.get_ui());
  return plan;
}

std::uint64_t RoutedRunner::route(const D1LCInstance& inst, const Phase& phase, std::uint64_t tag) {
  if (!sim_) return 0;
  const auto before = sim_->account().rounds_elapsed;
  const Placement placement = assign_machines(inst, sim_->config());
  std::vector<NodeId> senders = phase.readers;
  senders.insert(senders.end(), phase.subjects.begin(), phase.subjects.end());
  std::sort(senders.begin(), senders.end());
  senders.erase(std::unique(senders.begin(), senders.end()), senders.end());
  for (unsigned r = 0; r < phase.local_rounds; ++r) {
    sim_->local_round(inst, placement, senders, phase.words_per_message, splitmix64(tag * 131 + r));
  }
  sim_->charge("success_evaluation", phase.radius);
  return sim_->account().rounds_elapsed - before;
}

PhaseRecord RoutedRunner::finish(const D1LCInstance& inst, const Phase& phase, ColoringState& st,
                                 std::vector<char>& marked, const ColoringState& before) {
  PhaseRecord rec;
  rec.name = phase.name;
  rec.kind = phase.kind;
  rec.subjects = phase.subjects.size();
  const auto ok = phase.ssp->evaluate(inst, st, marked, phase.subjects);
  for (std::size_t i = 0; i < ok.size(); ++i) {
    if (!ok[i] && !st.colored(phase.subjects[i])) ++rec.failures;
  }
  rec.mean_failures = Rational(static_cast<unsigned long>(rec.failures));
  rec.deferred = defer_failures(phase, ok, st, marked);
  for (NodeId v = 0; v < st.size(); ++v) {
    if (st.colored(v) && !before.colored(v)) ++rec.colored;
  }
  if (sim_) sim_->mix(hash_state(st, inst.labels));
  return rec;
}

PhaseRecord TapeRunner::run(const D1LCInstance& inst, const Phase& phase, ColoringState& st,
                            std::vector<char>& marked) {
  const ColoringState before = st;
  phase.step(st, marked, *tape_);
  const auto rounds = route(inst, phase, counter_++);
  auto rec = finish(inst, phase, st, marked, before);
  rec.rounds = rounds;
  rec.output_bits = phase.bits_per_node * phase.readers.size();
  return rec;
}

PhaseRecord RandomizedRunner::run(const D1LCInstance& inst, const Phase& phase, ColoringState& st,
                                  std::vector<char>& marked) {
  const ColoringState before = st;
  const std::uint64_t index = counter_++;
  EntropySource source(seed_, index);
  auto tape = RandomTape::contiguous(source, inst.node_count(), phase.bits_per_node, tries_);
  phase.step(st, marked, tape);
  const auto rounds = route(inst, phase, index);
  auto rec = finish(inst, phase, st, marked, before);
  rec.chosen_seed = index;
  rec.rounds = rounds;
  rec.output_bits = phase.bits_per_node * phase.readers.size();
  return rec;
}

void slack_color(const D1LCInstance& inst, ColoringState& st, std::vector<char>& marked,
                 std::span<const NodeId> participants, LevelContext& ctx, std::optional<std::uint64_t> s_min) {
  auto active = uncolored_of(st, participants);
  if (active.empty()) return;
  std::uint64_t smin = 2;
  if (s_min) {
    smin = std::max<std::uint64_t>(2, *s_min);
  } else {
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    for (NodeId v : active) lo = std::min(lo, compute_slack(inst, st, v));
    smin = static_cast<std::uint64_t>(std::max<std::int64_t>(2, lo));
  }
  Rational kappa = ctx.cfg->kappa;
  if (kappa * mpz_class(static_cast<unsigned long>(smin)) <= 1) kappa = 1;
  run_slack_color(inst, st, marked, std::move(active), plan_slack_color(smin, kappa), ctx);
}

std::vector<TrialOutcome> slack_color(const D1LCInstance& inst, ColoringState& st,
                                      std::span<const NodeId> participants, std::uint64_t s_min,
                                      const Rational& kappa, const Config& cfg, RandomTape& tape) {
  const auto plan = plan_slack_color(s_min, kappa);
  TapeRunner runner(tape);
  LevelContext ctx;
  ctx.cfg = &cfg;
  ctx.threshold = low_degree_threshold(cfg, inst.node_count());
  ctx.ell = ell_for(cfg, inst.graph.max_degree());
  ctx.runner = &runner;
  std::vector<char> marked(inst.node_count(), 0);
  const auto active = uncolored_of(st, participants);
  run_slack_color(inst, st, marked, active, plan, ctx);
  std::vector<TrialOutcome> out;
  for (NodeId v : active) out.push_back({v, st.colored(v), st.colored(v) ? st.color(v) : 0});
  return out;
}

void color_sparse(const D1LCInstance& inst, ColoringState& st, std::vector<char>& marked,
                  const AlmostCliqueDecomposition& acd, const VStartClassification& vstart, LevelContext& ctx) {
  const Config& cfg = *ctx.cfg;
  std::vector<char> start(inst.node_count(), 0);
  for (NodeId v : vstart.v_start) start[v] = 1;
  std::vector<NodeId> rest;
  for (const auto* set : {&acd.v_sparse, &acd.v_uneven, &acd.v_unplaced}) {
    for (NodeId v : *set) {
      if (!start[v]) rest.push_back(v);
    }
  }
  rest = uncolored_of(st, rest);

  Phase gs = base_phase(ctx, "color_sparse.generate_slack", Subroutine::GenerateSlack, rest);
  gs.bits_per_node = kGenerateSlackBits + std::uint64_t{cfg.rejection_tries} * bits_for(max_palette(inst, rest));
  gs.local_rounds = 2;
  gs.step = [&inst, rest](ColoringState& s, std::vector<char>&, RandomTape& tape) {
    generate_slack(inst, s, rest, tape);
  };
  gs.ssp = ssp_wsp_for(Subroutine::GenerateSlack, cfg, success_context(ctx)).ssp;
  run_phase(inst, st, marked, ctx, std::move(gs));

  const std::string prefix = ctx.prefix;
  ctx.prefix = prefix + "color_sparse.start.";
  slack_color(inst, st, marked, vstart.v_start, ctx);
  ctx.prefix = prefix + "color_sparse.rest.";
  slack_color(inst, st, marked, rest, ctx);
  ctx.prefix = prefix;
}

DenseResult color_dense(const D1LCInstance& inst, ColoringState& st, std::vector<char>& marked,
                        const AlmostCliqueDecomposition& acd, LevelContext& ctx) {
  const Config& cfg = *ctx.cfg;
  DenseResult res;
  if (acd.cliques.empty()) return res;
  for (const auto& clique : acd.cliques) {
    const NodeId leader = select_leader(inst, clique);
    res.roles.push_back(compute_outliers(inst, clique, leader, ctx.ell));
  }
  charge(ctx, "clique_roles", 2);
  auto group = std::make_shared<const std::vector<std::int64_t>>(acd.clique_of);

  const auto dense = uncolored_of(st, acd.dense());
  Phase gs = base_phase(ctx, "color_dense.generate_slack", Subroutine::GenerateSlack, dense);
  gs.bits_per_node = kGenerateSlackBits + std::uint64_t{cfg.rejection_tries} * bits_for(max_palette(inst, dense));
  gs.local_rounds = 2;
  gs.step = [&inst, dense](ColoringState& s, std::vector<char>&, RandomTape& tape) {
    generate_slack(inst, s, dense, tape);
  };
  gs.ssp = ssp_wsp_for(Subroutine::GenerateSlack, cfg, success_context(ctx)).ssp;
  run_phase(inst, st, marked, ctx, std::move(gs));

  std::vector<CliqueRoles> low;
  std::vector<NodeId> pa_subjects;
  for (const auto& r : res.roles) {
    if (!r.low_slack) continue;
    low.push_back(r);
    for (NodeId v : r.inliers) pa_subjects.push_back(v);
  }
  pa_subjects = uncolored_of(st, pa_subjects);
  if (!pa_subjects.empty()) {
    if (ctx.warnings) {
      for (const auto& r : low) {
        std::string w;
        put_aside_threshold(inst, st, r, ctx.ell, &w);
        if (!w.empty()) ctx.warnings->push_back(std::move(w));
      }
    }
    Phase pa = base_phase(ctx, "color_dense.put_aside", Subroutine::PutAside, pa_subjects);
    pa.bits_per_node = kPutAsideBits;
    pa.local_rounds = 2;
    pa.step = [&inst, low, ell = ctx.ell](ColoringState& s, std::vector<char>& m, RandomTape& tape) {
      for (NodeId v : put_aside(inst, s, low, ell, tape).nodes) m[v] = 1;
    };
    auto sc = success_context(ctx);
    sc.group = group;
    pa.ssp = ssp_wsp_for(Subroutine::PutAside, cfg, sc).ssp;
    run_phase(inst, st, marked, ctx, std::move(pa));
  }

  std::vector<NodeId> outliers;
  for (const auto& r : res.roles) outliers.insert(outliers.end(), r.outliers.begin(), r.outliers.end());
  const std::string prefix = ctx.prefix;
  ctx.prefix = prefix + "color_dense.outliers.";
  slack_color(inst, st, marked, outliers, ctx);
  ctx.prefix = prefix;

  auto participants = std::make_shared<std::vector<char>>(inst.node_count(), 0);
  std::vector<NodeId> synch_subjects, leaders;
  std::uint64_t synch_bits = 0;
  for (const auto& r : res.roles) {
    std::uint64_t count = 0;
    for (NodeId v : r.inliers) {
      if (st.uncolored(v) && !marked[v]) {
        (*participants)[v] = 1;
        synch_subjects.push_back(v);
        ++count;
      }
    }
    if (count == 0) continue;
    leaders.push_back(r.leader);
    synch_bits = std::max<std::uint64_t>(
        synch_bits, count * cfg.rejection_tries * bits_for(inst.palette(r.leader).size()));
  }
  if (!synch_subjects.empty()) {
    std::sort(synch_subjects.begin(), synch_subjects.end());
    std::sort(leaders.begin(), leaders.end());
    leaders.erase(std::unique(leaders.begin(), leaders.end()), leaders.end());
    Phase sy = base_phase(ctx, "color_dense.synch_color_trial", Subroutine::SynchColorTrial, synch_subjects);
    sy.readers = leaders;
    sy.bits_per_node = std::max<std::uint64_t>(1, synch_bits);
    sy.local_rounds = 3;
    sy.step = [&inst, roles = res.roles](ColoringState& s, std::vector<char>& m, RandomTape& tape) {
      synch_color_trial(inst, s, roles, m, tape);
    };
    auto sc = success_context(ctx);
    sc.group = group;
    sc.participants = participants;
    sy.ssp = ssp_wsp_for(Subroutine::SynchColorTrial, cfg, sc).ssp;
    run_phase(inst, st, marked, ctx, std::move(sy));
  }

  std::vector<NodeId> remaining;
  for (NodeId v : acd.dense()) {
    if (st.uncolored(v) && !marked[v]) remaining.push_back(v);
  }
  ctx.prefix = prefix + "color_dense.rest.";
  slack_color(inst, st, marked, remaining, ctx);
  ctx.prefix = prefix;

  for (NodeId v = 0; v < marked.size(); ++v) {
    if (marked[v] && st.uncolored(v)) res.put_aside.push_back(v);
  }
  if (!res.put_aside.empty()) {
    charge(ctx, "put_aside_collect", 2);
    greedy_color(inst, st, res.put_aside);
  }
  return res;
}

void color_middle_on(const D1LCInstance& inst, ColoringState& st, std::vector<char>& marked, LevelContext& ctx,
                     MiddleResult* out) {
  MiddleResult local;
  MiddleResult& res = out ? *out : local;
  if (inst.node_count() == 0) return;
  const auto params = AcdParams::from(*ctx.cfg, ctx.threshold);
  res.acd = compute_acd(inst, params, ctx.space_words);
  charge(ctx, "acd", 4);
  if (ctx.on_acd) ctx.on_acd(inst, res.acd);
  res.vstart = classify_vstart(inst, res.acd, params);
  charge(ctx, "vstart", 2);
  color_sparse(inst, st, marked, res.acd, res.vstart, ctx);
  res.dense = color_dense(inst, st, marked, res.acd, ctx);
}

MiddleResult color_middle(const D1LCInstance& inst, LevelContext& ctx) {
  MiddleResult res;
  const std::size_t n = inst.node_count();
  res.state = ColoringState(n);
  std::vector<char> marked(n, 0);
  color_middle_on(inst, res.state, marked, ctx, &res);
  return res;
}

namespace {

MiddleResult color_middle_with(const D1LCInstance& inst, const Config& cfg, PhaseRunner& runner,
                               std::vector<PhaseRecord>* records) {
  LevelContext ctx;
  ctx.cfg = &cfg;
  ctx.threshold = low_degree_threshold(cfg, inst.node_count());
  ctx.ell = ell_for(cfg, inst.graph.max_degree());
  ctx.runner = &runner;
  ctx.records = records;
  return color_middle(inst, ctx);
}

}  // namespace

MiddleResult color_middle(const D1LCInstance& inst, const Config& cfg, RandomTape& tape) {
  TapeRunner runner(tape);
  return color_middle_with(inst, cfg, runner, nullptr);
}

MiddleResult color_middle(const D1LCInstance& inst, const Config& cfg, std::vector<PhaseRecord>* records) {
  RandomizedRunner runner(cfg.entropy_seed, cfg.rejection_tries);
  return color_middle_with(inst, cfg, runner, records);
}

void greedy_color(const D1LCInstance& inst, ColoringState& st, std::span<const NodeId> nodes) {
  std::vector<NodeId> order(nodes.begin(), nodes.end());
  std::sort(order.begin(), order.end());
  for (NodeId v : order) {
    if (!st.uncolored(v) && !st.deferred(v)) continue;
    const auto r = residual_palette(inst, st, v);
    if (r.empty()) throw Error(Errc::ImproperInput, "greedy step found an empty residual palette", inst.labels[v]);
    st.set_color(v, r.front());
  }
}

}  // namespace d1lc
