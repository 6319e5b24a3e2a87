#include "d1lc/derand.hpp"

#include "d1lc/error.hpp"
#include "d1lc/partition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace d1lc {

namespace {

std::uint64_t saturating_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    r *= base;
  }
  return r;
}

std::vector<NodeId> all_nodes(std::size_t n) {
  std::vector<NodeId> v(n);
  for (NodeId i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

PowerColoring color_power_graph_exp(const Graph& g, unsigned power, std::span<const NodeId> nodes,
                                    std::optional<std::uint64_t> space_words) {
  const std::size_t n = g.node_count();
  std::vector<NodeId> order = nodes.empty() ? all_nodes(n) : std::vector<NodeId>(nodes.begin(), nodes.end());
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  const std::uint64_t reach = saturating_pow(g.max_degree(), power);
  if (space_words && reach > *space_words) {
    throw Error(Errc::SpaceExceeded, "Delta^" + std::to_string(power) + " exceeds local space " +
                                         std::to_string(*space_words));
  }
  PowerColoring pc;
  pc.power = power;
  pc.colors.assign(n, 0);
  if (order.empty()) return pc;
  {
    std::vector<char> have(n, 0);
    std::vector<std::uint32_t> seen(n, 0);
    std::uint32_t stamp = 0;
    std::vector<char> used;
    std::vector<NodeId> frontier, next, touched;
    for (NodeId v : order) {
      ++stamp;
      touched.clear();
      frontier.assign(1, v);
      seen[v] = stamp;
      for (unsigned h = 0; h < power && !frontier.empty(); ++h) {
        next.clear();
        for (NodeId x : frontier) {
          for (NodeId u : g.neighbors(x)) {
            if (seen[u] == stamp) continue;
            seen[u] = stamp;
            next.push_back(u);
            if (have[u]) touched.push_back(u);
          }
        }
        frontier.swap(next);
      }
      used.assign(touched.size() + 1, 0);
      for (NodeId u : touched) {
        if (pc.colors[u] < used.size()) used[pc.colors[u]] = 1;
      }
      std::uint64_t c = 0;
      while (used[c]) ++c;
      pc.colors[v] = c;
      have[v] = 1;
      pc.color_count = std::max(pc.color_count, c + 1);
    }
  }
  return pc;
}

PowerColoring chunk_coloring(const Graph& g, unsigned power, std::span<const NodeId> nodes) {
  std::vector<NodeId> order = nodes.empty() ? all_nodes(g.node_count()) : std::vector<NodeId>(nodes.begin(), nodes.end());
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  const std::uint64_t reach = saturating_pow(g.max_degree(), power);
  if (reach != std::numeric_limits<std::uint64_t>::max() && reach + 1 < order.size()) {
    return color_power_graph_exp(g, power, order);
  }
  PowerColoring pc;
  pc.power = power;
  pc.colors.assign(g.node_count(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) pc.colors[order[i]] = i;
  pc.color_count = order.size();
  return pc;
}

PowerColoring color_power_graph(const Graph& g, unsigned radius, std::span<const NodeId> nodes,
                                std::optional<std::uint64_t> space_words) {
  return color_power_graph_exp(g, 4 * radius, nodes, space_words);
}

std::vector<std::uint64_t> chunk_bases(const PowerColoring& coloring, std::uint64_t bits_per_node) {
  std::vector<std::uint64_t> base(coloring.colors.size());
  for (std::size_t v = 0; v < base.size(); ++v) base[v] = coloring.colors[v] * bits_per_node;
  return base;
}

ChunkedTape assign_chunks(const RandomnessSource& source, std::uint64_t seed, const PowerColoring& coloring,
                          std::uint64_t bits_per_node, unsigned rejection_tries) {
  const std::uint64_t need = coloring.color_count * bits_per_node;
  if (need > source.output_bits()) {
    throw Error(Errc::OutputLengthExceeded, std::to_string(coloring.color_count) + " chunks of " +
                                                std::to_string(bits_per_node) + " bits exceed output length " +
                                                std::to_string(source.output_bits()));
  }
  auto bits = source.bind(seed);
  RandomTape tape(*bits, chunk_bases(coloring, bits_per_node), bits_per_node, rejection_tries);
  return ChunkedTape{std::move(bits), std::move(tape)};
}

unsigned host_threads() {
  if (const char* env = std::getenv("PALETTE_MPC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(std::min<long>(v, 256));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t conditional_expectation_seed(std::span<const std::uint64_t> failures) {
  const std::uint64_t size = failures.size();
  if (size == 0) return 0;
  unsigned d = 0;
  while ((std::uint64_t{1} << d) < size) ++d;
  std::uint64_t prefix = 0;
  for (unsigned i = 0; i < d; ++i) {
    const std::uint64_t mask = (std::uint64_t{2} << i) - 1;
    unsigned __int128 sum[2] = {0, 0};
    for (std::uint64_t s = 0; s < size; ++s) {
      if ((s & (mask >> 1)) != prefix) continue;
      sum[(s >> i) & 1] += failures[s];
    }
    if (sum[1] < sum[0]) prefix |= std::uint64_t{1} << i;
  }
  return prefix;
}

std::vector<std::uint64_t> ball_words(const D1LCInstance& inst, unsigned radius, std::span<const NodeId> nodes) {
  const std::size_t n = inst.node_count();
  std::vector<std::uint64_t> out(n, 0);
  std::vector<std::uint32_t> seen(n, 0);
  std::uint32_t stamp = 0;
  std::vector<NodeId> frontier, next;
  for (NodeId v : nodes) {
    ++stamp;
    seen[v] = stamp;
    frontier.assign(1, v);
    std::uint64_t words = 1 + inst.degree(v) + inst.palette(v).size();
    for (unsigned h = 0; h < radius && !frontier.empty(); ++h) {
      next.clear();
      for (NodeId x : frontier) {
        for (NodeId u : inst.graph.neighbors(x)) {
          if (seen[u] == stamp) continue;
          seen[u] = stamp;
          next.push_back(u);
          words += 1 + inst.degree(u) + inst.palette(u).size();
        }
      }
      frontier.swap(next);
    }
    out[v] = words;
  }
  return out;
}

PhaseRecord DerandomizedRunner::run(const D1LCInstance& inst, const Phase& phase, ColoringState& st,
                                    std::vector<char>& marked) {
  const Config& cfg = *cfg_;
  const std::uint64_t index = counter_++;
  const ColoringState before = st;
  MpcSimulator* sim = simulator();
  const std::uint64_t n = inst.node_count();

  PhaseRecord rec;
  std::uint64_t peak_ball = 0;
  for (NodeId v : phase.subjects) {
    if (v < ball_words_.size()) peak_ball = std::max(peak_ball, ball_words_[v]);
  }
  if (cfg.enforce_ball_space && sim && peak_ball > sim->config().local_space_words) {
    throw Error(Errc::SpaceExceeded, "phase " + phase.name + " needs a ball of " + std::to_string(peak_ball) +
                                         " words, local space is " +
                                         std::to_string(sim->config().local_space_words));
  }

  const auto rounds_before = sim ? sim->account().rounds_elapsed : 0;
  const PowerColoring pc = chunk_coloring(inst.graph, 4 * cfg.radius, phase.readers);
  if (sim) sim->charge("power_coloring", log_star(std::max<std::uint64_t>(n, 2)) + 1);

  const std::uint64_t bits = std::max<std::uint64_t>(phase.bits_per_node, 1);
  SourceParams sp;
  sp.kind = cfg.source;
  sp.output_bits = std::max<std::uint64_t>(pc.color_count * bits, 2);
  sp.max_seed_bits = cfg.max_seed_bits;
  sp.k = cfg.kwise;
  sp.entropy_seed = splitmix64(0xD1C0FFEEULL + index);
  const auto source = build_source(sp);
  const unsigned d = source->seed_bits();
  if (d > 24) {
    throw Error(Errc::SeedSpaceTooLarge, "seed space of 2^" + std::to_string(d) + " is too large to enumerate");
  }
  const std::uint64_t seeds = std::uint64_t{1} << d;
  const auto base = chunk_bases(pc, bits);

  auto evaluate = [&](std::uint64_t seed) {
    ColoringState s = st;
    std::vector<char> m = marked;
    auto bound = source->bind(seed);
    RandomTape tape(*bound, base, bits, cfg.rejection_tries);
    phase.step(s, m, tape);
    const auto ok = phase.ssp->evaluate(inst, s, m, phase.subjects);
    std::uint64_t fails = 0;
    for (std::size_t i = 0; i < ok.size(); ++i) {
      if (!ok[i] && !s.colored(phase.subjects[i])) ++fails;
    }
    return fails;
  };

  table_.assign(seeds, 0);
  const unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(host_threads(), seeds));
  if (threads <= 1) {
    for (std::uint64_t s = 0; s < seeds; ++s) table_[s] = evaluate(s);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::uint64_t s = w; s < seeds; s += threads) table_[s] = evaluate(s);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  const std::uint64_t chosen = conditional_expectation_seed(table_);
  if (sim) {
    const std::uint64_t per = std::max<std::uint64_t>(1, bits_for(sim->config().local_space_words));
    sim->charge("seed_selection", ((d + per - 1) / per) * sim->config().sort_rounds);
    sim->charge("collect_ball", phase.radius);
  }

  {
    auto bound = source->bind(chosen);
    RandomTape tape(*bound, base, bits, cfg.rejection_tries);
    phase.step(st, marked, tape);
  }
  route(inst, phase, index);
  rec = finish(inst, phase, st, marked, before);
  if (rec.failures != table_[chosen]) {
    throw Error(Errc::BadParameters, "phase " + phase.name + " is not deterministic under a fixed seed");
  }
  mpz_class total = 0;
  for (auto f : table_) total += static_cast<unsigned long>(f);
  rec.mean_failures = Rational(total, mpz_class(static_cast<unsigned long>(seeds)));
  rec.mean_failures.canonicalize();
  rec.seed_bits = d;
  rec.chosen_seed = chosen;
  rec.enumerated = true;
  rec.color_count = pc.color_count;
  rec.output_bits = source->output_bits();
  rec.peak_ball_words = peak_ball;
  rec.rounds = sim ? sim->account().rounds_elapsed - rounds_before : 0;
  return rec;
}

Procedure middle_procedure() {
  return [](const D1LCInstance& inst, ColoringState& st, std::vector<char>& marked, LevelContext& ctx) {
    color_middle_on(inst, st, marked, ctx);
  };
}

AlgorithmResult derandomize_algorithm(std::span<const Procedure> procs, const D1LCInstance& inst, const Config& cfg,
                                      const AlgorithmOptions& options) {
  AlgorithmResult res;
  res.state = ColoringState(inst.node_count());
  MpcSimulator* sim = options.sim;
  const std::uint64_t global_n = options.global_n.value_or(inst.node_count());
  const std::uint64_t threshold = low_degree_threshold(cfg, global_n);
  mpz_class levels_z;
  mpz_cdiv_q(levels_z.get_mpz_t(), cfg.delta.get_den_mpz_t(), cfg.delta.get_num_mpz_t());
  const unsigned levels = static_cast<unsigned>(std::max<unsigned long>(1, levels_z.get_ui()));

  D1LCInstance current = inst;
  std::vector<NodeId> origin = all_nodes(inst.node_count());

  for (unsigned level = 0; level < levels && current.node_count() > 0; ++level) {
    const std::size_t n = current.node_count();
    LevelTrace trace;
    trace.level = level;
    trace.nodes = n;
    trace.max_degree = current.graph.max_degree();

    ColoringState st(n);
    std::vector<char> marked(n, 0);
    std::unique_ptr<RoutedRunner> runner;
    if (cfg.mode == Mode::Derandomized) {
      auto dr = std::make_unique<DerandomizedRunner>(cfg);
      std::vector<NodeId> heavy;
      for (NodeId v = 0; v < n; ++v) {
        if (current.degree(v) >= threshold) heavy.push_back(v);
      }
      if (!heavy.empty() && !procs.empty()) dr->set_ball_words(ball_words(current, cfg.radius, heavy));
      runner = std::move(dr);
    } else {
      runner = std::make_unique<RandomizedRunner>(splitmix64(cfg.entropy_seed * 1000003ULL + level),
                                                  cfg.rejection_tries);
    }
    runner->attach(sim);

    LevelContext ctx;
    ctx.cfg = &cfg;
    ctx.threshold = threshold;
    ctx.ell = ell_for(cfg, current.graph.max_degree());
    ctx.runner = runner.get();
    ctx.sim = sim;
    ctx.records = &res.phases;
    ctx.warnings = &res.warnings;
    ctx.on_acd = options.on_acd;
    ctx.prefix = options.prefix + "L" + std::to_string(level) + ".";
    if (sim) ctx.space_words = sim->config().local_space_words;

    for (const auto& proc : procs) proc(current, st, marked, ctx);
    trace.colored_by_phases = st.count(NodeStatus::Colored);
    for (NodeId v = 0; v < n; ++v) {
      if (marked[v]) ++trace.put_aside;
    }

    for (NodeId v = 0; v < n; ++v) {
      if (st.uncolored(v) && residual_degree(current, st, v) >= threshold) {
        st.defer(v);
        ++trace.late_deferred;
      }
    }

    if (options.fallback) {
      std::vector<NodeId> rest = st.nodes_with(NodeStatus::Uncolored);
      if (!rest.empty()) {
        CategoryScope scope(sim, "fallback");
        std::vector<NodeId> sub_origin;
        const D1LCInstance sub = reduce_instance(current, st, rest, &sub_origin);
        const ColoringState fb = low_degree_fallback(sub, threshold, sim);
        for (NodeId i = 0; i < sub.node_count(); ++i) st.set_color(sub_origin[i], fb.color(i));
        trace.fallback_nodes = rest.size();
      }
    }
    if (cfg.debug_checks) check_partial_coloring(current, st);

    for (NodeId v = 0; v < n; ++v) {
      if (st.colored(v)) res.state.set_color(origin[v], st.color(v));
    }
    std::vector<NodeId> deferred = st.nodes_with(NodeStatus::Deferred);
    trace.deferred = deferred.size();
    res.levels.push_back(trace);
    if (sim) sim->mix(hash_state(res.state, inst.labels));

    std::vector<NodeId> keep;
    for (NodeId v = 0; v < n; ++v) {
      if (!st.colored(v)) keep.push_back(v);
    }
    std::vector<NodeId> sub_origin;
    ColoringState uncolor_deferred = st;
    for (NodeId v : keep) uncolor_deferred.reset(v);
    D1LCInstance next = reduce_instance(current, uncolor_deferred, keep, &sub_origin);
    std::vector<NodeId> next_origin(sub_origin.size());
    for (std::size_t i = 0; i < sub_origin.size(); ++i) next_origin[i] = origin[sub_origin[i]];
    current = std::move(next);
    origin = std::move(next_origin);
  }

  if (current.node_count() > 0) {
    if (sim && current.words() > sim->config().local_space_words) {
      throw Error(Errc::ResidualTooLarge, "final remainder of " + std::to_string(current.words()) +
                                              " words exceeds local space " +
                                              std::to_string(sim->config().local_space_words));
    }
    ColoringState st(current.node_count());
    std::vector<NodeId> all = all_nodes(current.node_count());
    greedy_color(current, st, all);
    for (NodeId v = 0; v < current.node_count(); ++v) res.state.set_color(origin[v], st.color(v));
    res.final_greedy = current.node_count();
    if (sim) sim->charge("final_greedy", 2);
  }
  return res;
}

}  // namespace d1lc
