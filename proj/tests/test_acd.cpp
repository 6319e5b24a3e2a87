#include "d1lc/acd.hpp"
#include "d1lc/error.hpp"
#include "d1lc/generate.hpp"
#include "d1lc/params.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace d1lc;
using namespace d1lc::testing;

namespace {

std::vector<NodeId> iota_nodes(NodeId first, std::size_t k) {
  std::vector<NodeId> v(k);
  for (std::size_t i = 0; i < k; ++i) v[i] = first + static_cast<NodeId>(i);
  return v;
}

// An unplaced node is neither sparse nor uneven, and adding it to any clique
// it touches would break a size condition.
bool fits_nowhere(const D1LCInstance& inst, const AlmostCliqueDecomposition& acd, const AcdParams& p, NodeId v) {
  const Graph& g = inst.graph;
  const Rational d(static_cast<long>(g.degree(v)));
  if (compute_sparsity(inst, v) >= p.eps_sp * d || compute_unevenness(inst, v) >= p.eps_sp * d) return false;
  for (const auto& c : acd.cliques) {
    std::set<NodeId> cs(c.begin(), c.end());
    cs.insert(v);
    bool touches = false;
    for (NodeId u : g.neighbors(v)) touches |= cs.count(u) > 0;
    if (!touches) continue;
    bool ok = true;
    for (NodeId x : cs) {
      std::size_t in = 0;
      for (NodeId w : g.neighbors(x)) in += cs.count(w);
      ok &= Rational(static_cast<long>(g.degree(x))) <= (1 + p.eps_ac) * Rational(static_cast<long>(cs.size()));
      ok &= Rational(static_cast<long>(cs.size())) <= (1 + p.eps_ac) * Rational(static_cast<long>(in));
    }
    if (ok) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("acd") {
  TEST_CASE("disjoint K8 blocks form one almost-clique each") {
    Edges e;
    for (NodeId b = 0; b < 4; ++b)
      for (auto x : clique_edges(iota_nodes(8 * b, 8))) e.push_back(x);
    auto inst = make_instance(32, e, std::vector<Palette>(32, Palette::range(8)));
    AcdParams p;
    const auto acd = compute_acd(inst, p);
    CHECK(acd.v_sparse.empty());
    CHECK(acd.v_uneven.empty());
    REQUIRE(acd.cliques.size() == 4);
    for (NodeId b = 0; b < 4; ++b) CHECK(acd.cliques[b] == iota_nodes(8 * b, 8));
    CHECK(acd_oracle_violations(inst, acd, p, true) == 0);
    CHECK(check_acd(inst, acd, p).empty());
  }

  TEST_CASE("hypercube nodes are all sparse") {
    GenerateParams gp;
    gp.kind = GraphKind::Hypercube;
    gp.dimension = 4;
    const auto inst = generate(gp);
    AcdParams p;
    p.eps_sp = make_rational(1, 10);
    const auto acd = compute_acd(inst, p);
    CHECK(acd.v_sparse.size() == 16);
    // A triangle-free node of degree d has sparsity (d-1)/2.
    for (NodeId v = 0; v < 16; ++v) CHECK(compute_sparsity(inst, v) == make_rational(3, 2));
  }

  TEST_CASE("star leaves are uneven") {
    auto inst = make_instance(10, star_edges(9));
    for (auto eps : {make_rational(1, 3), make_rational(4, 5)}) {
      AcdParams p;
      p.eps_sp = eps;
      const auto acd = compute_acd(inst, p);
      CHECK(acd.v_uneven == iota_nodes(1, 9));
    }
  }

  TEST_CASE("star center is sparse") {
    auto inst = make_instance(10, star_edges(9));
    CHECK(compute_acd(inst, AcdParams{}).v_sparse == std::vector<NodeId>{0});
  }

  TEST_CASE("space check on the two-hop ball") {
    auto inst = make_instance(10, star_edges(9));
    CHECK_THROWS_AS(compute_acd(inst, AcdParams{}, 80), Error);
    CHECK_NOTHROW(compute_acd(inst, AcdParams{}, 81));
  }

  TEST_CASE("heavy_mass values") {
    auto three = make_instance(4, star_edges(3), {Palette{0, 1, 2, 9}, Palette{0, 1, 2}, Palette{0, 3, 4}, Palette{0, 5, 6}});
    CHECK(heavy_mass(three, 0, 0) == 1);
    CHECK(heavy_mass(three, 0, 9) == 0);
    auto mixed = make_instance(3, star_edges(2), {Palette{0, 1, 7}, Palette{7, 1}, Palette{7, 2, 3, 4}});
    CHECK(heavy_mass(mixed, 0, 7) == make_rational(3, 4));
  }

  TEST_CASE("vstart sets on small cases") {
    AcdParams p;
    Edges e;
    for (NodeId b = 0; b < 2; ++b)
      for (auto x : clique_edges(iota_nodes(6 * b, 6))) e.push_back(x);
    auto dense = make_instance(12, e);
    const auto acd = compute_acd(dense, p);
    const auto vs = classify_vstart(dense, acd, p);
    CHECK(vs.v_balanced.empty());
    CHECK(vs.v_disc.empty());
    CHECK(vs.v_easy.empty());
    CHECK(vs.v_heavy.empty());
    CHECK(vs.v_start.empty());
  }

  TEST_CASE("vstart membership follows the set definitions") {
    Gen gen(23);
    for (int t = 0; t < 30; ++t) {
      auto inst = gen.instance(24, 0.25, 3, 40);
      AcdParams p;
      p.eps_1 = make_rational(1, 4);
      p.eps_2 = make_rational(1, 2);
      p.eps_3 = make_rational(1, 5);
      p.eps_4 = make_rational(1, 3);
      p.eps_5 = make_rational(1, 4);
      const auto acd = compute_acd(inst, p);
      const auto vs = classify_vstart(inst, acd, p);
      const auto& g = inst.graph;
      std::set<NodeId> easy(vs.v_easy.begin(), vs.v_easy.end());
      std::set<NodeId> heavy(vs.v_heavy.begin(), vs.v_heavy.end());
      std::set<NodeId> sparse(acd.v_sparse.begin(), acd.v_sparse.end());
      for (NodeId v : acd.v_uneven) CHECK(easy.count(v));
      for (NodeId v : vs.v_start) {
        CHECK(sparse.count(v));
        CHECK(!easy.count(v));
        CHECK(!heavy.count(v));
      }
      for (NodeId v : acd.v_sparse) {
        const std::size_t d = g.degree(v);
        std::size_t big = 0, dn = 0;
        for (NodeId u : g.neighbors(v)) {
          big += 3 * g.degree(u) > 2 * d;
          dn += acd.cls[u] == AcdClass::Dense;
        }
        const bool balanced = Rational(static_cast<long>(big)) >= p.eps_1 * Rational(static_cast<long>(d));
        const bool disc = compute_discrepancy(inst, v) >= p.eps_2 * Rational(static_cast<long>(d));
        const bool by_dense = Rational(static_cast<long>(dn)) >= p.eps_3 * Rational(static_cast<long>(d));
        CHECK(std::count(vs.v_balanced.begin(), vs.v_balanced.end(), v) == balanced);
        CHECK(std::count(vs.v_disc.begin(), vs.v_disc.end(), v) == disc);
        CHECK(easy.count(v) == (balanced || disc || by_dense));
        if (!easy.count(v)) {
          // Heavy colors: H(c) >= threshold; heavy node: their mass >= eps_4 d(v).
          std::set<Color> colors;
          for (NodeId u : g.neighbors(v))
            for (Color c : inst.palette(u)) colors.insert(c);
          Rational mass = 0;
          for (Color c : colors) {
            const Rational h = heavy_mass(inst, v, c);
            if (h >= p.heavy_threshold) mass += h;
          }
          CHECK(heavy.count(v) == (mass >= p.eps_4 * Rational(static_cast<long>(d))));
        }
      }
    }
  }

  TEST_CASE("select_leader picks minimum slackability, ties to the smallest id") {
    auto same = make_instance(4, clique_edges({0, 1, 2, 3}), std::vector<Palette>(4, Palette::range(4)));
    CHECK(select_leader(same, {0, 1, 2, 3}) == 0);
    CHECK(select_leader(same, {2}) == 2);
    CHECK_THROWS_AS(select_leader(same, {}), Error);
    Gen gen(29);
    for (int t = 0; t < 100; ++t) {
      auto inst = gen.instance(8, 0.7, 3, 12);
      std::vector<NodeId> c = iota_nodes(0, 8);
      NodeId best = 0;
      Rational best_s = compute_slackability(inst, 0).first;
      for (NodeId v = 1; v < 8; ++v) {
        const auto s = compute_slackability(inst, v).first;
        if (s < best_s) best = v, best_s = s;
      }
      CHECK(select_leader(inst, c) == best);
    }
  }

  TEST_CASE("select_leader with slackabilities 5, 2, 9") {
    // Star centers of degree 11, 5 and 19 have sparsity (d-1)/2 = 5, 2, 9.
    Edges e;
    NodeId next = 3;
    const std::size_t degs[3] = {11, 5, 19};
    for (NodeId c = 0; c < 3; ++c) {
      const std::size_t leaves = degs[c] - (c == 0 ? 0 : 0);
      for (std::size_t i = 0; i < leaves; ++i) e.emplace_back(c, next++);
    }
    auto inst = make_instance(next, e);
    CHECK(compute_slackability(inst, 0).first == 5);
    CHECK(compute_slackability(inst, 1).first == 2);
    CHECK(compute_slackability(inst, 2).first == 9);
    CHECK(select_leader(inst, {0, 1, 2}) == 1);
  }

  TEST_CASE("select_leader is stable under order-preserving relabeling") {
    Gen gen(31);
    for (int t = 0; t < 50; ++t) {
      auto inst = gen.instance(8, 0.7, 3, 12);
      // Spread ids 0..7 to 3v + 1 inside a larger node range.
      Edges e;
      for (NodeId v = 0; v < 8; ++v)
        for (NodeId u : inst.graph.neighbors(v))
          if (u > v) e.emplace_back(3 * v + 1, 3 * u + 1);
      std::vector<Palette> pal(24, Palette{0});
      for (NodeId v = 0; v < 8; ++v) pal[3 * v + 1] = inst.palette(v);
      auto spread = make_instance(24, e, pal);
      std::vector<NodeId> c, c2;
      for (NodeId v = 0; v < 8; ++v) c.push_back(v), c2.push_back(3 * v + 1);
      CHECK(select_leader(spread, c2) == 3 * select_leader(inst, c) + 1);
    }
  }

  TEST_CASE("outliers follow the three-set rule") {
    // K6 minus the edge {4, 5}; leader 0 sees everyone.
    Edges e;
    for (auto x : clique_edges(iota_nodes(0, 6)))
      if (!(x.first == 4 && x.second == 5)) e.push_back(x);
    auto inst = make_instance(6, e);
    const auto roles = compute_outliers(inst, iota_nodes(0, 6), 0, 100);
    for (NodeId v : roles.inliers) CHECK(inst.graph.adjacent(0, v));
    // Leader 0 misses node 5 in K6 minus {0, 5}.
    Edges e2;
    for (auto x : clique_edges(iota_nodes(0, 6)))
      if (!(x.first == 0 && x.second == 5)) e2.push_back(x);
    auto inst2 = make_instance(6, e2);
    const auto r2 = compute_outliers(inst2, iota_nodes(0, 6), 0, 100);
    CHECK(std::count(r2.outliers.begin(), r2.outliers.end(), 5) == 1);
  }

  TEST_CASE("outlier sets match a recomputation on planted cliques") {
    GenerateParams gp;
    gp.kind = GraphKind::PlantedCliques;
    gp.clique_size = 12;
    gp.cliques = 3;
    gp.n = 10;
    gp.p = 0.05;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      gp.seed = seed;
      const auto inst = generate(gp);
      const auto acd = compute_acd(inst, AcdParams{});
      const auto& g = inst.graph;
      for (const auto& c : acd.cliques) {
        const NodeId x = select_leader(inst, c);
        const auto roles = compute_outliers(inst, c, x, 4);
        std::set<NodeId> expect;
        auto by_common = c;
        std::stable_sort(by_common.begin(), by_common.end(), [&](NodeId a, NodeId b) {
          return g.common_neighbors(a, x) < g.common_neighbors(b, x);
        });
        const std::size_t k1 = (std::max(g.degree(x), c.size()) + 2) / 3;
        for (std::size_t i = 0; i < k1 && i < by_common.size(); ++i) expect.insert(by_common[i]);
        auto by_degree = c;
        std::stable_sort(by_degree.begin(), by_degree.end(),
                         [&](NodeId a, NodeId b) { return g.degree(a) > g.degree(b); });
        const std::size_t k2 = (c.size() + 5) / 6;
        for (std::size_t i = 0; i < k2 && i < by_degree.size(); ++i) expect.insert(by_degree[i]);
        // The leader is not its own neighbor, so it is always an outlier.
        for (NodeId v : c)
          if (!g.adjacent(v, x)) expect.insert(v);
        CHECK(std::vector<NodeId>(expect.begin(), expect.end()) == roles.outliers);
        CHECK(roles.outliers.size() >= k1);
        CHECK(roles.outliers.size() + roles.inliers.size() == c.size());
        for (NodeId v : roles.inliers) {
          CHECK(!expect.count(v));
          CHECK(g.adjacent(v, x));
        }
        CHECK(std::count(c.begin(), c.end(), roles.leader) == 1);
        CHECK(roles.low_slack == (compute_slackability(inst, x).first <= 4));
      }
    }
  }

  TEST_CASE("low-slack test uses <=") {
    auto inst = make_instance(6, star_edges(5), std::vector<Palette>(6, Palette::range(6)));
    // Star center: slackability 2.
    CHECK(is_low_slack_clique(inst, {0}, 0, 2));
    CHECK(is_low_slack_clique(inst, {0}, 0, 3));
    CHECK(!is_low_slack_clique(inst, {0}, 0, 1));
    auto k5 = make_instance(5, clique_edges(iota_nodes(0, 5)), std::vector<Palette>(5, Palette::range(5)));
    CHECK(is_low_slack_clique(k5, iota_nodes(0, 5), 0, 0));
  }

  TEST_CASE("decomposition conditions hold on generated graphs") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      std::vector<D1LCInstance> insts;
      GenerateParams gp;
      gp.seed = seed;
      gp.n = 300;
      gp.p = 12.0 / 300;
      insts.push_back(generate(gp));
      gp.kind = GraphKind::PlantedCliques;
      gp.clique_size = 16;
      gp.cliques = 6;
      gp.n = 40;
      gp.p = 0.01;
      insts.push_back(generate(gp));
      gp.kind = GraphKind::Hypercube;
      gp.dimension = 7;
      insts.push_back(generate(gp));
      for (const auto& inst : insts) {
        for (std::uint64_t min_degree : {0, 4}) {
          AcdParams p;
          p.min_degree = min_degree;
          const auto acd = compute_acd(inst, p);
          CHECK(acd_oracle_violations(inst, acd, p, true) == 0);
          for (NodeId v : acd.v_unplaced) CHECK(fits_nowhere(inst, acd, p, v));
          CHECK(check_acd(inst, acd, p).size() == acd.v_unplaced.size());
        }
      }
    }
  }

  TEST_CASE("nodes that fit no part are reported as unplaced") {
    // A K10 whose members carry many outside neighbors: too uneven for a
    // clique, too dense to be sparse.
    GenerateParams gp;
    gp.kind = GraphKind::PlantedCliques;
    gp.clique_size = 10;
    gp.cliques = 6;
    gp.n = 40;
    gp.p = 0.02;
    gp.seed = 1;
    const auto inst = generate(gp);
    AcdParams p;
    const auto acd = compute_acd(inst, p);
    CHECK(acd_oracle_violations(inst, acd, p, true) == 0);
    CHECK(!acd.v_unplaced.empty());
    for (NodeId v : acd.v_unplaced) CHECK(fits_nowhere(inst, acd, p, v));
    CHECK(check_acd(inst, acd, p).size() == acd.v_unplaced.size());
  }
}
