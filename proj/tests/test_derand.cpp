#include "d1lc/derand.hpp"
#include "d1lc/error.hpp"
#include "d1lc/success.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cstdlib>
#include <deque>
#include <map>

using namespace d1lc;
using namespace d1lc::testing;

namespace {

std::vector<NodeId> all_nodes(std::size_t n) {
  std::vector<NodeId> v(n);
  for (NodeId i = 0; i < n; ++i) v[i] = i;
  return v;
}

std::vector<int> distances(const Graph& g, NodeId s) {
  std::vector<int> dist(g.node_count(), -1);
  std::deque<NodeId> q{s};
  dist[s] = 0;
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop_front();
    for (NodeId w : g.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        q.push_back(w);
      }
    }
  }
  return dist;
}

bool proper_power_coloring(const Graph& g, const PowerColoring& pc, unsigned power) {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto d = distances(g, v);
    for (NodeId u = 0; u < g.node_count(); ++u)
      if (u != v && d[u] > 0 && d[u] <= static_cast<int>(power) && pc.colors[u] == pc.colors[v]) return false;
  }
  return true;
}

// Seed chosen by fixing bits from the lowest, each to the branch with the
// smaller mean over its completions (ties to 0).
std::uint64_t oracle_seed(const std::vector<std::uint64_t>& table) {
  unsigned d = 0;
  while ((std::size_t{1} << d) < table.size()) ++d;
  std::uint64_t prefix = 0;
  for (unsigned i = 0; i < d; ++i) {
    double mean[2] = {0, 0};
    double count[2] = {0, 0};
    for (std::uint64_t s = 0; s < table.size(); ++s) {
      if ((s & ((std::uint64_t{1} << i) - 1)) != prefix) continue;
      const int b = (s >> i) & 1;
      mean[b] += static_cast<double>(table[s]);
      count[b] += 1;
    }
    if (count[1] > 0 && mean[1] / count[1] < mean[0] / count[0]) prefix |= std::uint64_t{1} << i;
  }
  return prefix;
}

Phase trc_phase(const D1LCInstance& inst, const Config& cfg, std::uint64_t threshold) {
  Phase p;
  p.name = "trc";
  p.kind = Subroutine::TryRandomColor;
  p.radius = cfg.radius;
  p.subjects = all_nodes(inst.node_count());
  p.readers = p.subjects;
  std::uint64_t pmax = 1;
  for (NodeId v = 0; v < inst.node_count(); ++v) pmax = std::max<std::uint64_t>(pmax, inst.palette(v).size());
  p.bits_per_node = cfg.rejection_tries * bits_for(pmax);
  const auto readers = p.readers;
  p.step = [&inst, readers](ColoringState& st, std::vector<char>&, RandomTape& tape) {
    try_random_color(inst, st, readers, tape);
  };
  SuccessContext sc;
  sc.threshold = threshold;
  p.ssp = ssp_wsp_for(Subroutine::TryRandomColor, cfg, sc).ssp;
  return p;
}

}  // namespace

TEST_SUITE("derand") {
  TEST_CASE("power graph coloring examples") {
    auto p5 = Graph::from_edges(5, path_edges(5));
    const auto pc = color_power_graph_exp(p5, 2);
    CHECK(pc.colors == std::vector<std::uint64_t>{0, 1, 2, 0, 1});
    CHECK(pc.color_count == 3);

    auto empty = Graph::from_edges(6, {});
    const auto e = color_power_graph(empty, 1);
    CHECK(std::all_of(e.colors.begin(), e.colors.end(), [](auto c) { return c == 0; }));
    CHECK(e.color_count == 1);

    for (std::size_t k : {1u, 4u, 9u}) {
      std::vector<NodeId> nodes = all_nodes(k);
      auto kk = Graph::from_edges(k, clique_edges(nodes));
      CHECK(color_power_graph(kk, 1).color_count == k);
      CHECK(color_power_graph(kk, 2).color_count == k);
    }

    auto star = Graph::from_edges(11, star_edges(10));
    CHECK_THROWS_AS(color_power_graph_exp(star, 2, {}, 99), Error);
    CHECK_NOTHROW(color_power_graph_exp(star, 2, {}, 100));
  }

  TEST_CASE("power colorings separate nodes within the power distance") {
    Gen gen(41);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 2 + gen.below(30);
      auto g = Graph::from_edges(n, gen.edges(n, 0.08 + 0.1 * gen.below(3)));
      const unsigned power = 1 + gen.below(4);
      for (const auto& pc : {color_power_graph_exp(g, power), chunk_coloring(g, power)}) {
        CHECK(proper_power_coloring(g, pc, power));
        std::uint64_t reach = 1;
        for (unsigned i = 0; i < power; ++i) reach *= g.max_degree();
        CHECK(pc.color_count <= reach + 1);
      }
    }
  }

  TEST_CASE("chunk assignment") {
    auto g = Graph::from_edges(4, path_edges(4));
    const auto pc = color_power_graph_exp(g, 1);
    SeededGenerator gen(2, 64, 8);
    auto ct = assign_chunks(gen, 3, pc, 5);
    const auto base = chunk_bases(pc, 5);
    CHECK(base[0] != base[1]);
    CHECK(base[0] == base[2]);  // distance 2 > power 1
    std::set<std::uint64_t> starts(base.begin(), base.end());
    CHECK(starts.size() * 5 == pc.color_count * 5);
    CHECK(*starts.rbegin() + 5 <= pc.color_count * 5);
    // A node reads exactly its chunk of the bound seed.
    const auto first = ct.tape.read(1, 5);
    CHECK(first == gen.bits(3, base[1], 5));
    CHECK_THROWS_AS(ct.tape.read(1, 1), Error);
    SeededGenerator tiny(2, 9, 4);
    CHECK_THROWS_AS(assign_chunks(tiny, 0, pc, 5), Error);
  }

  TEST_CASE("randomness sources") {
    SourceParams sp;
    sp.kind = SourceKind::TrueRandomOracle;
    sp.max_seed_bits = 4;
    sp.output_bits = 8;
    sp.entropy_seed = 7;
    const auto oracle = build_source(sp);
    CHECK(dynamic_cast<const TrueRandomOracle&>(*oracle).table_bits() == 128);
    CHECK(oracle->seed_bits() == 4);
    CHECK(oracle->bits(3, 0, 8) == build_source(sp)->bits(3, 0, 8));
    CHECK_THROWS_AS(oracle->bits(16, 0, 1), Error);
    CHECK_THROWS_AS(oracle->bits(0, 4, 5), Error);

    SeededGenerator gen(8, 1000, 12);
    CHECK(gen.seed_bits() < gen.output_bits());
    for (std::uint64_t i = 0; i < 1000; i += 37) CHECK(gen.bits(123, i, 1) == gen.bits(123, i, 1));
    SeededGenerator short_out(8, 5, 16);
    CHECK(short_out.seed_bits() == 4);
  }

  TEST_CASE("finite field arithmetic") {
    for (unsigned m : {1u, 2u, 3u, 5u, 8u}) {
      BinaryField f(m);
      CHECK(BinaryField::irreducible(f.modulus()));
      const std::uint64_t size = std::uint64_t{1} << m;
      for (std::uint64_t a = 1; a < size; ++a) {
        std::uint64_t inverses = 0;
        for (std::uint64_t b = 0; b < size; ++b) {
          CHECK(f.mul(a, b) == f.mul_slow(a, b));
          inverses += f.mul(a, b) == 1;
        }
        CHECK(inverses == 1);
      }
    }
    CHECK_FALSE(BinaryField::irreducible(0b101));  // x^2 + 1 = (x + 1)^2
    CHECK(BinaryField::irreducible(0b111));
  }

  TEST_CASE("a pairwise independent generator has uniform bit pairs") {
    SeededGenerator gen(2, 24, 32);
    REQUIRE(gen.exact());
    const std::uint64_t seeds = std::uint64_t{1} << gen.seed_bits();
    for (std::uint64_t i = 0; i < 24; ++i) {
      for (std::uint64_t j = i + 1; j < 24; ++j) {
        std::uint64_t count[4] = {0, 0, 0, 0};
        for (std::uint64_t s = 0; s < seeds; ++s) ++count[gen.bits(s, i, 1) * 2 + gen.bits(s, j, 1)];
        for (auto c : count) CHECK(c * 4 == seeds);
      }
    }
  }

  TEST_CASE("conditional expectations pick the oracle seed and beat the mean") {
    Gen gen(99);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t size = std::size_t{1} << gen.below(9);
      std::vector<std::uint64_t> table(size);
      for (auto& t : table) t = gen.below(1 + gen.below(20));
      const auto chosen = conditional_expectation_seed(table);
      CHECK(chosen == oracle_seed(table));
      std::uint64_t sum = 0;
      for (auto t : table) sum += t;
      CHECK(table[chosen] * size <= sum);
    }
    CHECK(conditional_expectation_seed(std::vector<std::uint64_t>{}) == 0);
    CHECK(conditional_expectation_seed(std::vector<std::uint64_t>{5, 5, 5, 5}) == 0);
    CHECK(conditional_expectation_seed(std::vector<std::uint64_t>{3, 1, 3, 0}) == 3);
  }

  TEST_CASE("derandomized phases") {
    Config cfg;
    cfg.max_seed_bits = 8;
    SUBCASE("a single node with one color is colored under any seed") {
      auto inst = make_instance(1, {}, {Palette({3})});
      ColoringState st(1);
      std::vector<char> marked(1, 0);
      DerandomizedRunner runner(cfg);
      const auto rec = runner.run(inst, trc_phase(inst, cfg, 0), st, marked);
      CHECK(st.colored(0));
      CHECK(st.color(0) == 3);
      CHECK(rec.deferred == 0);
    }
    SUBCASE("a property that always holds defers nothing") {
      Gen gen(3);
      auto inst = gen.instance(20, 0.3, 1);
      ColoringState st(20);
      std::vector<char> marked(20, 0);
      DerandomizedRunner runner(cfg);
      const auto rec = runner.run(inst, trc_phase(inst, cfg, 1000), st, marked);
      CHECK(rec.deferred == 0);
      CHECK(st.count(NodeStatus::Deferred) == 0);
    }
    SUBCASE("the chosen seed beats the mean and the table matches a replay") {
      Gen gen(12);
      for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 8 + gen.below(40);
        auto inst = gen.instance(n, 0.15, 6);
        auto phase = trc_phase(inst, cfg, 1);
        ColoringState st(n);
        std::vector<char> marked(n, 0);
        DerandomizedRunner runner(cfg);
        const auto rec = runner.run(inst, phase, st, marked);
        const auto& table = runner.last_table();
        std::uint64_t sum = 0;
        for (auto t : table) sum += t;
        CHECK(rec.failures * table.size() <= sum);
        CHECK(rec.enumerated);

        // Replay a few seeds through the generator by hand.
        const auto pc = chunk_coloring(inst.graph, 4 * cfg.radius, phase.readers);
        SeededGenerator g(cfg.kwise, std::max<std::uint64_t>(pc.color_count * phase.bits_per_node, 2),
                          cfg.max_seed_bits);
        REQUIRE(table.size() == (std::size_t{1} << g.seed_bits()));
        for (std::uint64_t s = 0; s < table.size(); s += 1 + table.size() / 8) {
          auto bits = g.bind(s);
          RandomTape tape(*bits, chunk_bases(pc, phase.bits_per_node), phase.bits_per_node, cfg.rejection_tries);
          ColoringState replay(n);
          std::vector<char> m(n, 0);
          phase.step(replay, m, tape);
          const auto ok = phase.ssp->evaluate(inst, replay, m, phase.subjects);
          std::uint64_t fails = 0;
          for (NodeId v = 0; v < n; ++v) fails += !ok[v] && !replay.colored(v);
          CHECK(fails == table[s]);
        }

        // Every subject left undeferred satisfies the weak property.
        SuccessContext sc;
        sc.threshold = 1;
        const auto ev = ssp_wsp_for(Subroutine::TryRandomColor, cfg, sc);
        for (NodeId v = 0; v < n; ++v)
          if (!st.deferred(v)) CHECK(ev.wsp->holds(inst, st, marked, v));
        CHECK(brute_partial_valid(inst, st));
      }
    }
    SUBCASE("the oracle source also beats its mean") {
      cfg.source = SourceKind::TrueRandomOracle;
      Gen gen(13);
      for (int trial = 0; trial < 5; ++trial) {
        auto inst = gen.instance(24, 0.2, 4);
        ColoringState st(24);
        std::vector<char> marked(24, 0);
        DerandomizedRunner runner(cfg);
        const auto rec = runner.run(inst, trc_phase(inst, cfg, 1), st, marked);
        std::uint64_t sum = 0;
        for (auto t : runner.last_table()) sum += t;
        CHECK(rec.failures * runner.last_table().size() <= sum);
      }
    }
    SUBCASE("host thread count does not change the result") {
      Gen gen(14);
      auto inst = gen.instance(40, 0.2, 3);
      auto phase = trc_phase(inst, cfg, 1);
      std::vector<ColoringState> states;
      std::vector<std::vector<std::uint64_t>> tables;
      for (const char* threads : {"1", "3", "8"}) {
        setenv("PALETTE_MPC_THREADS", threads, 1);
        ColoringState st(40);
        std::vector<char> marked(40, 0);
        DerandomizedRunner runner(cfg);
        runner.run(inst, phase, st, marked);
        states.push_back(st);
        tables.push_back(runner.last_table());
      }
      unsetenv("PALETTE_MPC_THREADS");
      CHECK(states[0] == states[1]);
      CHECK(states[0] == states[2]);
      CHECK(tables[0] == tables[2]);
    }
  }

  TEST_CASE("derandomize_algorithm") {
    Config cfg;
    cfg.max_seed_bits = 6;
    cfg.low_degree_threshold = 1;
    SUBCASE("no procedures: the greedy step colors everything") {
      Gen gen(5);
      auto inst = gen.instance(15, 0.4, 0);
      const auto res = derandomize_algorithm({}, inst, cfg);
      CHECK(brute_valid(inst, res.state));
    }
    SUBCASE("one phase on a 5-cycle with three colors") {
      Edges cycle = path_edges(5);
      cycle.emplace_back(4, 0);
      std::vector<Palette> pals(5, Palette({0, 1, 2}));
      auto inst = make_instance(5, cycle, pals);
      Procedure trc = [](const D1LCInstance& in, ColoringState& st, std::vector<char>& marked, LevelContext& ctx) {
        auto phase = trc_phase(in, *ctx.cfg, ctx.threshold);
        std::vector<NodeId> live;
        for (NodeId v : phase.subjects)
          if (st.uncolored(v)) live.push_back(v);
        phase.subjects = phase.readers = live;
        const auto readers = live;
        phase.step = [&in, readers](ColoringState& s, std::vector<char>&, RandomTape& tape) {
          try_random_color(in, s, readers, tape);
        };
        if (!live.empty()) ctx.records->push_back(ctx.runner->run(in, phase, st, marked));
      };
      std::vector<Procedure> procs{trc};
      const auto a = derandomize_algorithm(procs, inst, cfg);
      CHECK(brute_valid(inst, a.state));
      CHECK(a.levels.size() <= 16);
      const auto b = derandomize_algorithm(procs, inst, cfg);
      CHECK(a.state == b.state);
      CHECK(a.phases.size() == b.phases.size());
    }
  }
}
