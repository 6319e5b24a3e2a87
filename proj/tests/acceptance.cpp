#include "cli.hpp"
#include "d1lc/acd.hpp"
#include "d1lc/derand.hpp"
#include "d1lc/error.hpp"
#include "d1lc/generate.hpp"
#include "d1lc/io.hpp"
#include "d1lc/local_procs.hpp"
#include "d1lc/partition.hpp"
#include "d1lc/pipeline.hpp"
#include "d1lc/report.hpp"
#include "d1lc/success.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

using namespace d1lc;
using namespace d1lc::testing;
namespace fs = std::filesystem;

namespace {

using Settings = std::vector<std::pair<std::string, std::string>>;

const Settings kSettings{{"mode", "derandomized"},
                         {"low_degree_threshold", "8"},
                         {"ell", "4"},
                         {"delta", "1/5"},
                         {"mid_degree_exponent", "2"},
                         {"eps_sp", "1/40"}};

Config acceptance_config() {
  Config cfg;
  for (const auto& [k, v] : kSettings) apply_setting(cfg, k, v);
  return cfg;
}

struct Case {
  std::string name;
  GenerateParams params;
  std::string graph;
  std::string palettes;
  std::uint64_t n = 0;
  std::uint64_t pn = 0;  // 0 outside the G(n, p) series
};

class Workspace {
 public:
  Workspace() {
    dir_ = fs::temp_directory_path() / ("d1lc_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  ~Workspace() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  std::string file(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

std::vector<Case> criterion_one_cases(const Workspace& ws) {
  std::vector<Case> cases;
  for (unsigned e = 8; e <= 13; ++e) {
    for (std::uint64_t pn : {4, 16, 64}) {
      for (std::uint64_t seed : {1, 2}) {
        Case c;
        c.n = std::uint64_t{1} << e;
        c.pn = pn;
        c.params.kind = GraphKind::Gnp;
        c.params.n = c.n;
        c.params.p = static_cast<double>(pn) / static_cast<double>(c.n);
        c.params.seed = seed;
        c.params.extra_colors = 2 * pn;
        c.name = "gnp-" + std::to_string(c.n) + "-" + std::to_string(pn) + "-s" + std::to_string(seed);
        cases.push_back(c);
      }
    }
  }
  struct Planted {
    std::size_t k, cliques, filler;
    double p;
    std::size_t extra;
  };
  const std::vector<Planted> planted{{8, 32, 256, 0.01, 0},   {12, 40, 500, 0.004, 0}, {16, 16, 200, 0.01, 16},
                                     {12, 64, 1000, 0.002, 8}, {24, 40, 2000, 0.004, 16}, {32, 20, 1000, 0.003, 16},
                                     {20, 100, 2000, 0.002, 16}, {48, 16, 1500, 0.004, 32}};
  std::uint64_t seed = 1;
  for (const auto& pl : planted) {
    Case c;
    c.params.kind = GraphKind::PlantedCliques;
    c.params.clique_size = pl.k;
    c.params.cliques = pl.cliques;
    c.params.n = pl.filler;
    c.params.p = pl.p;
    c.params.extra_colors = pl.extra;
    c.params.seed = seed++;
    c.n = pl.k * pl.cliques + pl.filler;
    c.name = "planted-k" + std::to_string(pl.k) + "x" + std::to_string(pl.cliques);
    cases.push_back(c);
  }
  for (unsigned dim = 8; dim <= 13; ++dim) {
    Case c;
    c.params.kind = GraphKind::Hypercube;
    c.params.dimension = dim;
    c.n = std::uint64_t{1} << dim;
    c.name = "hypercube-" + std::to_string(dim);
    cases.push_back(c);
  }
  for (auto& c : cases) {
    c.graph = ws.file(c.name + ".graph");
    c.palettes = ws.file(c.name + ".pal");
  }
  return cases;
}

int run_cli(const Case& c, const std::string& coloring, const std::string& report, std::string* err_text = nullptr) {
  cli::RunOptions opt;
  opt.graph = c.graph;
  opt.palettes = c.palettes;
  opt.settings = kSettings;
  opt.output = coloring;
  opt.report = report;
  std::ostringstream out, err;
  const int code = cli::cmd_run(opt, out, err);
  if (err_text) *err_text = err.str();
  return code;
}

struct Line {
  int id;
  bool pass;
  std::string detail;
};

std::vector<Line> results;

void report(int id, bool pass, const std::string& detail) {
  results.push_back({id, pass, detail});
  std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  " << detail << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Criteria 1, 4, 7 and 9 share the same instances.
void end_to_end(const Workspace& ws) {
  const auto cases = criterion_one_cases(ws);
  const Config cfg = acceptance_config();

  std::size_t generated = 0, ran = 0, verified = 0;
  std::vector<std::string> failures;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& c : cases) {
    std::ostringstream out, err;
    cli::GenerateOptions g{c.params, c.graph, c.palettes};
    if (cli::cmd_generate(g, out, err) != 0) {
      failures.push_back(c.name + " generate: " + err.str());
      continue;
    }
    ++generated;
    std::string run_err;
    const auto col = ws.file(c.name + ".col");
    const int code = run_cli(c, col, ws.file(c.name + ".rep"), &run_err);
    if (code != 0) {
      failures.push_back(c.name + " run exit " + std::to_string(code) + ": " + run_err);
      continue;
    }
    ++ran;
    std::ostringstream vout, verr;
    if (cli::cmd_verify(c.graph, c.palettes, col, vout, verr) == 0) {
      // The verifier's verdict is re-checked against the brute-force one.
      const auto inst = load_instance_files(c.graph, c.palettes);
      const auto st = parse_coloring(read_file(col), inst.node_count());
      if (brute_valid(inst, st)) ++verified;
      else failures.push_back(c.name + " brute-force verifier rejects the coloring");
    } else {
      failures.push_back(c.name + " verify: " + vout.str());
    }
  }
  const double elapsed_cli = seconds_since(t0);
  {
    std::ostringstream d;
    d << cases.size() << " instances, " << generated << " generated, " << ran << " ran, " << verified
      << " verified, " << std::fixed << std::setprecision(1) << elapsed_cli << " s (budget 600 s)";
    for (const auto& f : failures) d << "\n    " << f;
    report(1, cases.size() == 50 && verified == cases.size() && elapsed_cli < 600, d.str());
  }

  // In-process replay of the same runs with hooks on every partition and
  // decomposition.
  std::size_t partitions = 0, binned = 0, lib_part_bad = 0, oracle_part_bad = 0;
  std::size_t decompositions = 0, acd_nodes = 0, lib_acd_bad = 0, oracle_acd_bad = 0, unplaced = 0;
  std::size_t overflows = 0, other_errors = 0;
  std::map<std::string, std::size_t> lib_conditions;
  std::map<std::uint64_t, std::map<std::uint64_t, std::vector<double>>> mid_rounds;  // pn -> n -> rounds
  for (const auto& c : cases) {
    if (!fs::exists(c.graph)) continue;
    const auto inst = load_instance_files(c.graph, c.palettes);
    const std::uint64_t n = inst.node_count();
    const auto acd_params = AcdParams::from(cfg, low_degree_threshold(cfg, n));
    ReduceOptions hooks;
    hooks.on_partition = [&](const D1LCInstance& part_inst, const PartitionResult& part) {
      ++partitions;
      const auto chk = check_partition(part_inst, part, cfg, n);
      binned += chk.binned;
      lib_part_bad += chk.degree_violations + chk.palette_violations;
      oracle_part_bad += partition_oracle_violations(part_inst, part, cfg, n);
    };
    hooks.on_acd = [&](const D1LCInstance& acd_inst, const AlmostCliqueDecomposition& acd) {
      ++decompositions;
      acd_nodes += acd_inst.node_count();
      unplaced += acd.v_unplaced.size();
      for (const auto& v : check_acd(acd_inst, acd, acd_params)) {
        ++lib_acd_bad;
        ++lib_conditions[v.condition];
      }
      oracle_acd_bad += acd_oracle_violations(acd_inst, acd, acd_params);
    };
    try {
      const auto out = run_pipeline(inst, cfg, hooks);
      if (c.pn) {
        const auto& cats = out.report.stats.rounds_by_category;
        const auto it = cats.find("mid_degree");
        mid_rounds[c.pn][n].push_back(it == cats.end() ? 0.0 : static_cast<double>(it->second));
      }
    } catch (const Error& e) {
      if (e.code() == Errc::SendOverflow || e.code() == Errc::ReceiveOverflow) ++overflows;
      else ++other_errors;
      std::cout << "    " << c.name << ": " << e.what() << std::endl;
    }
  }

  {
    std::ostringstream d;
    d << partitions << " partitions, " << binned << " binned nodes, " << lib_part_bad << " checker violations, "
      << oracle_part_bad << " oracle violations";
    report(4, partitions > 0 && lib_part_bad == 0 && oracle_part_bad == 0 && other_errors == 0 && overflows == 0,
           d.str());
  }
  {
    std::ostringstream d;
    d << decompositions << " decompositions over " << acd_nodes << " nodes, " << lib_acd_bad
      << " checker violations, " << oracle_acd_bad << " oracle violations, " << unplaced << " unplaced";
    for (const auto& [cond, count] : lib_conditions) d << "\n    " << cond << ": " << count;
    report(7, decompositions > 0 && lib_acd_bad == 0 && oracle_acd_bad == 0, d.str());
  }
  {
    // Least-squares slope of log R against log log2 n, per density and pooled
    // with one intercept per density: R grows sub-logarithmically when the
    // pooled exponent is below 1.
    std::ostringstream d;
    d << overflows << " overflows";
    double sxy = 0, sxx = 0;
    std::size_t series = 0;
    for (const auto& [pn, by_n] : mid_rounds) {
      std::vector<double> xs, ys;
      d << "\n    pn=" << pn << " rounds:";
      for (const auto& [n, rs] : by_n) {
        double mean = 0;
        for (double r : rs) mean += r;
        mean /= static_cast<double>(rs.size());
        d << " " << mean;
        if (mean <= 0) continue;
        xs.push_back(std::log(std::log2(static_cast<double>(n))));
        ys.push_back(std::log(mean));
      }
      if (xs.size() < 2) continue;
      double mx = 0, my = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
      mx /= static_cast<double>(xs.size());
      my /= static_cast<double>(xs.size());
      double pxy = 0, pxx = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        pxy += (xs[i] - mx) * (ys[i] - my);
        pxx += (xs[i] - mx) * (xs[i] - mx);
      }
      sxy += pxy;
      sxx += pxx;
      ++series;
      d << "  fit R ~ (log n)^" << std::fixed << std::setprecision(3) << pxy / pxx;
      d.unsetf(std::ios::fixed);
    }
    const double alpha = sxx > 0 ? sxy / sxx : 0;
    d << "\n    pooled fit R ~ (log n)^" << std::fixed << std::setprecision(3) << alpha;
    report(9, overflows == 0 && series == 3 && alpha < 1.0, d.str());
  }
}

void determinism(const Workspace& ws) {
  std::vector<Case> cases;
  {
    Case c;
    c.params.kind = GraphKind::Gnp;
    c.params.n = 4096;
    c.params.p = 16.0 / 4096;
    c.params.seed = 7;
    c.params.extra_colors = 32;
    c.name = "det-gnp";
    cases.push_back(c);
    Case p;
    p.params.kind = GraphKind::PlantedCliques;
    p.params.clique_size = 24;
    p.params.cliques = 40;
    p.params.n = 2000;
    p.params.p = 0.004;
    p.params.extra_colors = 16;
    p.params.seed = 7;
    p.name = "det-planted";
    cases.push_back(p);
  }
  bool ok = true;
  std::ostringstream d;
  for (auto& c : cases) {
    c.graph = ws.file(c.name + ".graph");
    c.palettes = ws.file(c.name + ".pal");
    std::ostringstream out, err;
    if (cli::cmd_generate({c.params, c.graph, c.palettes}, out, err) != 0) {
      ok = false;
      continue;
    }
    std::vector<std::string> colorings, reports;
    for (const char* threads : {"1", "2", "4"}) {
      setenv("PALETTE_MPC_THREADS", threads, 1);
      const auto col = ws.file(c.name + "-t" + threads + ".col");
      const auto rep = ws.file(c.name + "-t" + threads + ".rep");
      if (run_cli(c, col, rep) != 0) {
        ok = false;
        continue;
      }
      colorings.push_back(read_file(col));
      reports.push_back(strip_wall_clock(read_file(rep)));
    }
    unsetenv("PALETTE_MPC_THREADS");
    bool same = colorings.size() == 3 && reports.size() == 3;
    for (std::size_t i = 1; same && i < 3; ++i) same = colorings[i] == colorings[0] && reports[i] == reports[0];
    const auto blocks = reports.empty() ? std::vector<ReportBlock>{} : parse_report(reports[0]);
    const std::string hash = blocks.empty() ? "" : blocks[0].get("transcript_hash");
    d << c.name << " " << (same ? "identical" : "DIFFERENT") << " (transcript " << hash << ") ";
    ok = ok && same && !hash.empty();
  }
  report(2, ok, d.str() + "under 1, 2, 4 threads");
}

bool connected(const Graph& g) {
  std::vector<char> seen(g.node_count(), 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (NodeId u : g.neighbors(v))
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
  }
  return count == g.node_count();
}

std::size_t residual_slack_violations(const D1LCInstance& inst) {
  std::size_t bad = 0;
  for (NodeId v = 0; v < inst.node_count(); ++v) bad += inst.palette(v).size() < inst.degree(v) + 1;
  return bad;
}

void micro_oracle() {
  Gen gen(8);
  std::size_t graphs = 0, invalid = 0, residuals = 0, residual_bad = 0, errors = 0;
  const Config cfg;
  while (graphs < 1000) {
    Graph g = Graph::from_edges(8, gen.edges(8, 0.2 + 0.7 * static_cast<double>(gen.below(100)) / 100.0));
    if (!connected(g)) continue;
    ++graphs;
    std::vector<Palette> pal(8);
    for (NodeId v = 0; v < 8; ++v) pal[v] = Palette::range(g.degree(v) + 1);
    const auto inst = D1LCInstance::create(std::move(g), std::move(pal));
    ReduceOptions hooks;
    hooks.on_acd = [&](const D1LCInstance& sub, const AlmostCliqueDecomposition&) {
      ++residuals;
      residual_bad += residual_slack_violations(sub);
    };
    try {
      const auto out = run_pipeline(inst, cfg, hooks);
      invalid += !brute_valid(inst, out.state) || !out.report.verdict.valid;
    } catch (const Error& e) {
      ++errors;
    }
    for (int k = 0; k < 4; ++k) {
      const auto st = gen.partial_coloring(inst, 0.25 * k + 0.1);
      ++residuals;
      residual_bad += residual_slack_violations(reduce_instance(inst, st));
    }
    // Random (not default) palettes too, for the residual property.
    const auto rand_inst = gen.instance(8, 0.5, 3);
    ++residuals;
    residual_bad += residual_slack_violations(reduce_instance(rand_inst, gen.partial_coloring(rand_inst, 0.5)));
  }
  std::ostringstream d;
  d << graphs << " connected 8-node graphs, " << invalid << " invalid, " << errors << " errors; " << residuals
    << " residual instances, " << residual_bad << " with p' < d'+1";
  report(3, invalid == 0 && errors == 0 && residual_bad == 0, d.str());
}

// Runs each phase through a derandomized runner and audits the seed table
// it leaves behind.
class AuditRunner final : public PhaseRunner {
 public:
  explicit AuditRunner(const Config& cfg) : inner_(cfg) {}
  PhaseRecord run(const D1LCInstance& inst, const Phase& phase, ColoringState& st, std::vector<char>& marked) override {
    const auto rec = inner_.run(inst, phase, st, marked);
    const auto& table = inner_.last_table();
    if (!rec.enumerated) return rec;
    ++phases;
    if (table.size() > (std::size_t{1} << 12) || rec.chosen_seed >= table.size()) {
      ++bad;
      return rec;
    }
    mpz_class sum = 0;
    for (auto t : table) sum += mpz_class(std::to_string(t));
    const mpz_class chosen(std::to_string(table[rec.chosen_seed]));
    // F(chosen) <= sum / |S|, exactly.
    if (chosen * mpz_class(std::to_string(table.size())) > sum) ++bad;
    if (table[rec.chosen_seed] != rec.failures) ++bad;
    max_seed_bits = std::max(max_seed_bits, rec.seed_bits);
    return rec;
  }
  std::size_t phases = 0;
  std::size_t bad = 0;
  unsigned max_seed_bits = 0;

 private:
  DerandomizedRunner inner_;
};

void phase_guarantee() {
  Config cfg = acceptance_config();
  cfg.low_degree_threshold = 4;
  cfg.max_seed_bits = 10;
  std::size_t instances = 0, phases = 0, bad = 0;
  unsigned bits = 0;
  for (std::uint64_t seed = 1; instances < 20; ++seed) {
    GenerateParams gp;
    gp.seed = seed;
    if (seed % 2) {
      gp.kind = GraphKind::Gnp;
      gp.n = 32 + 4 * (seed % 9);
      gp.p = (6.0 + static_cast<double>(seed % 5)) / static_cast<double>(gp.n);
      gp.extra_colors = seed % 3;
    } else {
      gp.kind = GraphKind::PlantedCliques;
      gp.clique_size = 6 + seed % 4;
      gp.cliques = 4;
      gp.n = 16;
      gp.p = 0.05;
    }
    const auto inst = generate(gp);
    if (inst.node_count() > 64) continue;
    ++instances;
    AuditRunner runner(cfg);
    LevelContext ctx;
    ctx.cfg = &cfg;
    ctx.threshold = *cfg.low_degree_threshold;
    ctx.ell = ell_for(cfg, inst.graph.max_degree());
    ctx.runner = &runner;
    color_middle(inst, ctx);
    phases += runner.phases;
    bad += runner.bad;
    bits = std::max(bits, runner.max_seed_bits);
  }
  std::ostringstream d;
  d << instances << " instances, " << phases << " enumerated phases (seed bits <= " << bits << "), " << bad
    << " with F(chosen) > mean";
  report(5, instances == 20 && phases > 0 && bad == 0 && bits <= 12, d.str());
}

void deferral_safety() {
  Gen gen(4);
  const Config cfg;
  const std::size_t target = 10000;
  bool ok = true;
  std::ostringstream d;
  std::size_t total_subsets = 0;
  for (Subroutine kind : all_subroutines()) {
    std::size_t positive = 0, attempts = 0, bad = 0;
    while (positive < target && attempts < 50 * target) {
      ++attempts;
      const std::size_t n = 2 + gen.below(9);
      auto inst = gen.instance(n, 0.2 + 0.6 * static_cast<double>(gen.below(100)) / 100.0, 4);
      auto st = gen.partial_coloring(inst, 0.4);
      std::vector<char> marked(n, 0);
      for (NodeId v = 0; v < n; ++v) marked[v] = st.uncolored(v) && gen.coin(0.3);
      SuccessContext ctx;
      ctx.threshold = gen.below(4);
      ctx.ell = 1 + gen.below(3);
      auto group = std::make_shared<std::vector<std::int64_t>>(n);
      auto part = std::make_shared<std::vector<char>>(n);
      for (NodeId v = 0; v < n; ++v) {
        (*group)[v] = static_cast<std::int64_t>(gen.below(3)) - 1;
        (*part)[v] = gen.coin(0.6);
      }
      ctx.group = group;
      ctx.participants = part;
      ctx.bound = SlackBound{1 + gen.below(4), make_rational(static_cast<long>(gen.below(4)), 1 + static_cast<long>(gen.below(3))),
                             1 + gen.below(4), make_rational(static_cast<long>(gen.below(4)), 1 + static_cast<long>(gen.below(3)))};
      const auto ev = ssp_wsp_for(kind, cfg, ctx);
      const NodeId v = static_cast<NodeId>(gen.below(n));
      if (!ev.ssp->holds(inst, st, marked, v)) continue;
      ++positive;
      // Every subset of the other uncolored nodes.
      std::vector<NodeId> others;
      for (NodeId u = 0; u < n; ++u)
        if (u != v && !st.colored(u)) others.push_back(u);
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << others.size()); ++mask) {
        auto after = st;
        auto after_marked = marked;
        for (std::size_t i = 0; i < others.size(); ++i) {
          if (!((mask >> i) & 1)) continue;
          after.defer(others[i]);
          after_marked[others[i]] = 0;
        }
        ++total_subsets;
        bad += !ev.wsp->holds(inst, after, after_marked, v);
      }
    }
    d << "\n    " << subroutine_name(kind) << ": " << positive << " trials, " << bad << " failures";
    ok = ok && positive >= target && bad == 0;
  }
  report(6, ok, std::to_string(all_subroutines().size()) + " evaluators, " + std::to_string(total_subsets) +
                    " deferral subsets" + d.str());
}

void randomized_statistics() {
  const std::size_t draws = std::size_t{1} << 17;
  auto inst = make_instance(draws, {});
  EntropySource src(2026, 0);
  auto tape = RandomTape::unbounded(src, draws);
  ColoringState st(draws);
  std::vector<NodeId> all(draws);
  for (NodeId v = 0; v < draws; ++v) all[v] = v;
  std::size_t sampled = 0;
  for (const auto& o : generate_slack(inst, st, all, tape)) sampled += o.colored;
  const double p = 1.0 / 16;
  const double sigma = std::sqrt(static_cast<double>(draws) * p * (1 - p));
  const double z = (static_cast<double>(sampled) - static_cast<double>(draws) * p) / sigma;

  GenerateParams gp;
  gp.kind = GraphKind::Gnp;
  gp.n = 4096;
  gp.p = 16.0 / 4096;
  gp.seed = 12;
  const auto g = generate(gp);
  Config cfg = acceptance_config();
  cfg.mode = Mode::Randomized;
  std::vector<double> fractions;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    cfg.entropy_seed = seed;
    const auto res = color_middle(g, cfg);
    fractions.push_back(static_cast<double>(res.state.count(NodeStatus::Deferred)) / 4096.0);
  }
  std::sort(fractions.begin(), fractions.end());
  const double median = (fractions[9] + fractions[10]) / 2;
  std::ostringstream d;
  d << "generate_slack " << sampled << "/" << draws << " sampled (z = " << std::setprecision(3) << z
    << "); color_middle median deferred " << 100 * median << "% (max " << 100 * fractions.back() << "%)";
  report(8, std::abs(z) <= 3 && median <= 0.05, d.str());
}

}  // namespace

int main() {
  Workspace ws;
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::pair<const char*, void (*)()>> unary{
      {"micro oracle", micro_oracle},
      {"phase guarantee", phase_guarantee},
      {"deferral safety", deferral_safety},
      {"randomized statistics", randomized_statistics},
  };
  try {
    end_to_end(ws);
    determinism(ws);
  } catch (const std::exception& e) {
    std::cout << "end-to-end: unexpected error: " << e.what() << std::endl;
  }
  for (const auto& [name, fn] : unary) {
    try {
      fn();
    } catch (const std::exception& e) {
      std::cout << name << ": unexpected error: " << e.what() << std::endl;
    }
  }
  std::sort(results.begin(), results.end(), [](const Line& a, const Line& b) { return a.id < b.id; });
  std::size_t failed = 9;
  std::cout << "\nsummary (" << std::fixed << std::setprecision(1) << seconds_since(t0) << " s)\n";
  for (const auto& r : results) {
    std::cout << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << "\n";
    failed -= r.pass;
  }
  return failed == 0 ? 0 : 1;
}
