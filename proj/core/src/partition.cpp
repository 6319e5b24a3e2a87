#include "d1lc/partition.hpp"

#include "d1lc/error.hpp"
#include "d1lc/local_procs.hpp"
#include "d1lc/prg.hpp"

#include <algorithm>
#include <string>

namespace d1lc {

namespace {

std::uint64_t affine(std::uint64_t a, std::uint64_t b, std::uint64_t x, std::uint64_t p) noexcept {
  const unsigned __int128 v = static_cast<unsigned __int128>(a) * x + b;
  return static_cast<std::uint64_t>(v % p);
}

std::uint64_t prime_at_least(std::uint64_t x) {
  if (x <= 2) return 2;
  mpz_class z(static_cast<unsigned long>(x - 1)), p;
  mpz_nextprime(p.get_mpz_t(), z.get_mpz_t());
  return p.get_ui();
}

// d' n^(a/b) < 2 d  <=>  d'^b n^a < (2d)^b
bool degree_bullet(std::uint64_t d_in, std::uint64_t d, const mpz_class& n_pow_a, unsigned long b) {
  mpz_class lhs, rhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), d_in, b);
  lhs *= n_pow_a;
  mpz_ui_pow_ui(rhs.get_mpz_t(), 2 * d, b);
  return lhs < rhs;
}

struct Split {
  std::vector<char> high;
  std::uint64_t bins = 1;
  std::uint64_t mid_bound = 0;
};

Split split_nodes(const D1LCInstance& inst, const Config& cfg, std::uint64_t n) {
  Split s;
  s.bins = bin_count(cfg, n);
  s.mid_bound = mid_degree_bound(cfg, n);
  s.high.assign(inst.node_count(), 0);
  if (s.bins <= 2) return s;
  for (NodeId v = 0; v < inst.node_count(); ++v) {
    if (inst.degree(v) > s.mid_bound) s.high[v] = 1;
  }
  return s;
}

std::vector<std::uint64_t> node_bins(const D1LCInstance& inst, const Split& s, const HashChoice& h) {
  std::vector<std::uint64_t> bin(inst.node_count(), s.bins);
  for (NodeId v = 0; v < inst.node_count(); ++v) {
    if (s.high[v]) bin[v] = h.node_bin(inst.labels[v]);
  }
  return bin;
}

// Counts bullet violations; stops at the first one when `stop` is set.
PartitionBulletCheck count_violations(const D1LCInstance& inst, const Split& s, const HashChoice& h,
                                      const Config& cfg, std::uint64_t n, bool stop) {
  PartitionBulletCheck c;
  const auto bin = node_bins(inst, s, h);
  mpz_class n_pow_a;
  mpz_ui_pow_ui(n_pow_a.get_mpz_t(), n, cfg.delta.get_num().get_ui());
  const unsigned long b = cfg.delta.get_den().get_ui();
  for (NodeId v = 0; v < inst.node_count(); ++v) {
    if (!s.high[v]) continue;
    ++c.binned;
    std::uint64_t d_in = 0;
    for (NodeId u : inst.graph.neighbors(v)) {
      if (bin[u] == bin[v]) ++d_in;
    }
    if (!degree_bullet(d_in, inst.degree(v), n_pow_a, b)) {
      ++c.degree_violations;
      if (stop) return c;
    }
    if (bin[v] + 1 < s.bins) {
      std::uint64_t p_in = 0;
      for (Color col : inst.palette(v)) {
        if (h.color_bin(col) == bin[v]) ++p_in;
      }
      if (d_in >= p_in) {
        ++c.palette_violations;
        if (stop) return c;
      }
    }
  }
  return c;
}

D1LCInstance induced_part(const D1LCInstance& inst, const std::vector<NodeId>& nodes, const HashChoice* restrict_to,
                          std::uint64_t bin) {
  std::vector<Palette> pals;
  std::vector<NodeId> labels;
  pals.reserve(nodes.size());
  for (NodeId v : nodes) {
    if (restrict_to) {
      std::vector<Color> kept;
      for (Color c : inst.palette(v)) {
        if (restrict_to->color_bin(c) == bin) kept.push_back(c);
      }
      pals.emplace_back(std::move(kept));
    } else {
      pals.push_back(inst.palette(v));
    }
    labels.push_back(inst.labels[v]);
  }
  return D1LCInstance::create(inst.graph.induced(nodes), std::move(pals), std::move(labels));
}

void charge(MpcSimulator* sim, const std::string& what, std::uint64_t rounds) {
  if (sim) sim->charge(what, rounds);
}

}  // namespace

std::uint64_t HashChoice::node_bin(NodeId label) const noexcept {
  return affine(a1, b1, label, p1) % bins;
}

std::uint64_t HashChoice::color_bin(Color c) const noexcept {
  return bins <= 1 ? 0 : affine(a2, b2, c, p2) % (bins - 1);
}

std::uint64_t mid_degree_bound(const Config& cfg, std::uint64_t n) {
  return floor_pow(std::max<std::uint64_t>(n, 1), cfg.delta * cfg.mid_degree_exponent);
}

std::uint64_t bin_count(const Config& cfg, std::uint64_t n) {
  return ceil_pow(std::max<std::uint64_t>(n, 1), cfg.delta);
}

HashChoice select_hashes(const D1LCInstance& inst, const Config& cfg, std::uint64_t n) {
  const Split s = split_nodes(inst, cfg, n);
  HashChoice h;
  h.bins = s.bins;
  if (std::none_of(s.high.begin(), s.high.end(), [](char c) { return c != 0; })) return h;
  h.trivial = false;
  Color max_color = 0;
  for (const auto& p : inst.palettes) {
    if (!p.empty()) max_color = std::max(max_color, p.colors().back());
  }
  h.p1 = prime_at_least(std::max<std::uint64_t>(n, 2));
  h.p2 = prime_at_least(std::max<std::uint64_t>(n * n, max_color + 1));
  for (std::uint64_t i = 0; i < cfg.seed_budget; ++i) {
    const std::uint64_t seed = splitmix64(i);
    h.a1 = 1 + seed % (h.p1 - 1);
    h.b1 = splitmix64(seed ^ 1) % h.p1;
    h.a2 = 1 + splitmix64(seed ^ 2) % (h.p2 - 1);
    h.b2 = splitmix64(seed ^ 3) % h.p2;
    h.seed_index = i;
    h.candidates = i + 1;
    const auto c = count_violations(inst, s, h, cfg, n, true);
    if (c.degree_violations == 0 && c.palette_violations == 0) return h;
  }
  throw Error(Errc::NoValidSeed, "no hash seed among " + std::to_string(cfg.seed_budget) +
                                     " candidates satisfies both partition conditions (n = " + std::to_string(n) +
                                     ", bins = " + std::to_string(s.bins) + ")");
}

PartitionResult low_space_partition(const D1LCInstance& inst, const Config& cfg, std::uint64_t n) {
  PartitionResult res;
  res.hashes = select_hashes(inst, cfg, n);
  res.mid_degree_bound = mid_degree_bound(cfg, n);
  const Split s = split_nodes(inst, cfg, n);
  if (res.hashes.trivial) {
    for (NodeId v = 0; v < inst.node_count(); ++v) res.mid_nodes.push_back(v);
    res.g_mid = inst;
    return res;
  }
  const auto bin = node_bins(inst, s, res.hashes);
  res.bin_nodes.assign(s.bins, {});
  for (NodeId v = 0; v < inst.node_count(); ++v) {
    if (bin[v] == s.bins) {
      res.mid_nodes.push_back(v);
    } else {
      res.bin_nodes[bin[v]].push_back(v);
    }
  }
  for (std::uint64_t b = 0; b < s.bins; ++b) {
    const bool restricted = b + 1 < s.bins;
    res.bins.push_back(induced_part(inst, res.bin_nodes[b], restricted ? &res.hashes : nullptr, b));
  }
  res.g_mid = induced_part(inst, res.mid_nodes, nullptr, 0);
  return res;
}

PartitionBulletCheck check_partition(const D1LCInstance& inst, const PartitionResult& part, const Config& cfg,
                                     std::uint64_t n) {
  if (part.hashes.trivial) return {};
  return count_violations(inst, split_nodes(inst, cfg, n), part.hashes, cfg, n, false);
}

ColoringState low_degree_fallback(const D1LCInstance& inst, std::uint64_t threshold, MpcSimulator* sim) {
  const std::size_t n = inst.node_count();
  ColoringState st(n);
  if (n == 0) return st;
  if (inst.graph.max_degree() > threshold) {
    throw Error(Errc::DegreeTooHigh, "maximum degree " + std::to_string(inst.graph.max_degree()) +
                                         " exceeds the low-degree threshold " + std::to_string(threshold));
  }
  const PowerColoring pc = color_power_graph_exp(inst.graph, 2);
  std::vector<std::vector<NodeId>> classes(pc.color_count);
  for (NodeId v = 0; v < n; ++v) classes[pc.colors[v]].push_back(v);
  for (const auto& cls : classes) greedy_color(inst, st, cls);
  charge(sim, "fallback_power_coloring", log_star(std::max<std::size_t>(n, 2)) + 1);
  charge(sim, "fallback_classes", pc.color_count);
  return st;
}

ColoringState low_degree_fallback(const D1LCInstance& inst, const Config& cfg, MpcSimulator* sim) {
  return low_degree_fallback(inst, low_degree_threshold(cfg, inst.node_count()), sim);
}

ReduceResult derandomized_mid_degree_color(const D1LCInstance& inst, const Config& cfg, std::uint64_t n,
                                           const ReduceOptions& options) {
  ReduceResult res;
  CategoryScope scope(options.sim, "mid_degree");
  std::vector<Procedure> procs;
  if (inst.graph.max_degree() >= low_degree_threshold(cfg, n)) procs.push_back(middle_procedure());
  AlgorithmOptions ao;
  ao.sim = options.sim;
  ao.global_n = n;
  ao.on_acd = options.on_acd;
  auto a = derandomize_algorithm(procs, inst, cfg, ao);
  res.state = std::move(a.state);
  res.phases = std::move(a.phases);
  res.levels = std::move(a.levels);
  res.warnings = std::move(a.warnings);
  res.final_greedy = a.final_greedy;
  return res;
}

namespace {

void absorb(ReduceResult& into, ReduceResult&& from) {
  for (auto& p : from.phases) into.phases.push_back(std::move(p));
  for (auto& l : from.levels) into.levels.push_back(l);
  for (auto& t : from.trace) into.trace.push_back(std::move(t));
  for (auto& w : from.warnings) into.warnings.push_back(std::move(w));
  into.depth = std::max(into.depth, from.depth);
  into.final_greedy += from.final_greedy;
}

void copy_colors(ColoringState& into, const std::vector<NodeId>& nodes, const ColoringState& from) {
  for (std::size_t i = 0; i < nodes.size(); ++i) into.set_color(nodes[i], from.color(i));
}

ReduceResult reduce_rec(const D1LCInstance& inst, const Config& cfg, std::uint64_t n, const ReduceOptions& options,
                        unsigned depth, const std::string& path) {
  ReduceResult res;
  res.state = ColoringState(inst.node_count());
  res.depth = depth;
  if (inst.node_count() == 0) return res;

  RecursionEntry entry;
  entry.depth = depth;
  entry.part = path;
  entry.nodes = inst.node_count();
  entry.max_degree = inst.graph.max_degree();

  PartitionResult part;
  if (cfg.partition) {
    CategoryScope scope(options.sim, "partition");
    part = low_space_partition(inst, cfg, n);
    charge(options.sim, "select_hashes", std::max<std::uint64_t>(part.hashes.candidates, 1) * cfg.sort_rounds);
    charge(options.sim, "partition", cfg.sort_rounds);
    const auto check = check_partition(inst, part, cfg, n);
    if (check.degree_violations || check.palette_violations) {
      throw Error(Errc::NoValidSeed, "accepted partition violates its conditions");
    }
    if (options.on_partition) options.on_partition(inst, part);
  }
  if (!cfg.partition || part.hashes.trivial) {
    entry.mid_nodes = inst.node_count();
    res.trace.push_back(entry);
    auto mid = derandomized_mid_degree_color(inst, cfg, n, options);
    res.state = mid.state;
    mid.state = {};
    absorb(res, std::move(mid));
    res.depth = depth;
    return res;
  }

  entry.seed_index = part.hashes.seed_index;
  entry.mid_nodes = part.mid_nodes.size();
  for (std::size_t b = 0; b < part.bin_nodes.size(); ++b) {
    entry.bin_sizes.push_back(part.bin_nodes[b].size());
    entry.bin_max_degrees.push_back(part.bins[b].graph.max_degree());
  }
  res.trace.push_back(entry);

  // Bins with restricted palettes run simultaneously: the clock advances by
  // the slowest of them.
  const std::size_t last = part.bin_nodes.size() - 1;
  const RoundClock start = options.sim ? options.sim->clock() : RoundClock{};
  RoundClock slowest = start;
  for (std::size_t b = 0; b < last; ++b) {
    if (part.bin_nodes[b].empty()) continue;
    if (options.sim) options.sim->set_clock(start);
    auto sub = reduce_rec(part.bins[b], cfg, n, options, depth + 1, path + "/bin" + std::to_string(b));
    copy_colors(res.state, part.bin_nodes[b], sub.state);
    absorb(res, std::move(sub));
    if (options.sim && options.sim->clock().rounds > slowest.rounds) slowest = options.sim->clock();
  }
  if (options.sim) options.sim->set_clock(slowest);
  if (!part.bin_nodes[last].empty()) {
    charge(options.sim, "palette_update", 2);
    const auto updated = reduce_instance(inst, res.state, part.bin_nodes[last]);
    auto sub = reduce_rec(updated, cfg, n, options, depth + 1, path + "/bin" + std::to_string(last));
    copy_colors(res.state, part.bin_nodes[last], sub.state);
    absorb(res, std::move(sub));
  }
  if (!part.mid_nodes.empty()) {
    charge(options.sim, "palette_update", 2);
    const auto updated = reduce_instance(inst, res.state, part.mid_nodes);
    auto mid = derandomized_mid_degree_color(updated, cfg, n, options);
    copy_colors(res.state, part.mid_nodes, mid.state);
    mid.state = {};
    absorb(res, std::move(mid));
  }
  return res;
}

}  // namespace

ReduceResult low_space_color_reduce(const D1LCInstance& inst, const Config& cfg, const ReduceOptions& options) {
  return reduce_rec(inst, cfg, inst.node_count(), options, 0, "root");
}

}  // namespace d1lc
