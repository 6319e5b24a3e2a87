#include "d1lc/acd.hpp"

#include "d1lc/error.hpp"
#include "d1lc/params.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace d1lc {

AcdParams AcdParams::from(const Config& cfg, std::uint64_t min_degree) {
  AcdParams p;
  p.eps_ac = cfg.eps_ac;
  p.eps_sp = cfg.eps_sp;
  p.eps_1 = cfg.eps_1;
  p.eps_2 = cfg.eps_2;
  p.eps_3 = cfg.eps_3;
  p.eps_4 = cfg.eps_4;
  p.eps_5 = cfg.eps_5;
  p.heavy_threshold = cfg.heavy_threshold;
  p.min_degree = min_degree;
  return p;
}

std::vector<NodeId> AlmostCliqueDecomposition::dense() const {
  std::vector<NodeId> out;
  for (const auto& c : cliques) out.insert(out.end(), c.begin(), c.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

Rational times(const Rational& q, std::size_t k) { return q * mpz_class(static_cast<unsigned long>(k)); }

bool similar(const Graph& g, NodeId u, NodeId v, const Rational& eps_ac) {
  // Closed neighborhoods: N[u] and N[v] share u, v and the common neighbors.
  const std::size_t shared = g.common_neighbors(u, v) + 2;
  const std::size_t larger = std::max(g.degree(u), g.degree(v)) + 1;
  return Rational(shared) >= times(1 - eps_ac, larger);
}

std::size_t inside(const Graph& g, NodeId v, const std::vector<char>& member) {
  std::size_t k = 0;
  for (NodeId u : g.neighbors(v)) k += member[u] ? 1 : 0;
  return k;
}

bool size_conditions(const Graph& g, NodeId v, std::size_t size, std::size_t internal, const Rational& eps_ac) {
  return Rational(static_cast<unsigned long>(g.degree(v))) <= times(1 + eps_ac, size) &&
         Rational(static_cast<unsigned long>(size)) <= times(1 + eps_ac, internal);
}

// Whether clique c stays valid with v added; `member` marks c.
bool can_join(const Graph& g, const std::vector<NodeId>& c, NodeId v, std::vector<char>& member,
              const Rational& eps_ac) {
  member[v] = 1;
  bool ok = size_conditions(g, v, c.size() + 1, inside(g, v, member), eps_ac);
  for (std::size_t i = 0; ok && i < c.size(); ++i) {
    ok = size_conditions(g, c[i], c.size() + 1, inside(g, c[i], member), eps_ac);
  }
  member[v] = 0;
  return ok;
}

}  // namespace

AlmostCliqueDecomposition compute_acd(const D1LCInstance& inst, const AcdParams& params,
                                      std::optional<std::uint64_t> space_words) {
  const Graph& g = inst.graph;
  const std::size_t n = g.node_count();
  const std::size_t delta = g.max_degree();
  if (space_words && static_cast<double>(delta) * static_cast<double>(delta) > static_cast<double>(*space_words)) {
    throw Error(Errc::SpaceExceeded, "2-hop ball of size Delta^2 = " + std::to_string(delta * delta) +
                                         " exceeds local space " + std::to_string(*space_words));
  }
  AlmostCliqueDecomposition acd;
  acd.cls.assign(n, AcdClass::Unplaced);
  acd.clique_of.assign(n, -1);
  std::vector<char> candidate(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    const std::size_t d = g.degree(v);
    if (d < params.min_degree) {
      acd.cls[v] = AcdClass::LowDegree;
    } else if (compute_sparsity(inst, v) >= times(params.eps_sp, d)) {
      acd.cls[v] = AcdClass::Sparse;
    } else if (compute_unevenness(inst, v) >= times(params.eps_sp, d)) {
      acd.cls[v] = AcdClass::Uneven;
    } else {
      candidate[v] = 1;
    }
  }
  // Components of the mutual-similarity graph over the remaining nodes.
  std::vector<char> seen(n, 0);
  std::vector<char> member(n, 0);
  for (NodeId s = 0; s < n; ++s) {
    if (!candidate[s] || seen[s]) continue;
    std::vector<NodeId> comp{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      NodeId x = comp[head];
      for (NodeId y : g.neighbors(x)) {
        if (candidate[y] && !seen[y] && similar(g, x, y, params.eps_ac)) {
          seen[y] = 1;
          comp.push_back(y);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    for (NodeId v : comp) member[v] = 1;
    // Peel one violator of (iii)/(iv) at a time until the rest is a valid
    // almost-clique: the one with the fewest internal neighbors relative to
    // the size, then the largest degree, then the largest id.
    while (!comp.empty()) {
      std::size_t worst = comp.size();
      std::size_t worst_in = 0;
      for (std::size_t i = 0; i < comp.size(); ++i) {
        const NodeId v = comp[i];
        const std::size_t in = inside(g, v, member);
        if (size_conditions(g, v, comp.size(), in, params.eps_ac)) continue;
        if (worst == comp.size() || in < worst_in ||
            (in == worst_in && g.degree(v) >= g.degree(comp[worst]))) {
          worst = i;
          worst_in = in;
        }
      }
      if (worst == comp.size()) break;
      member[comp[worst]] = 0;
      comp.erase(comp.begin() + static_cast<std::ptrdiff_t>(worst));
    }
    if (!comp.empty()) {
      const auto id = static_cast<std::int64_t>(acd.cliques.size());
      for (NodeId v : comp) {
        acd.cls[v] = AcdClass::Dense;
        acd.clique_of[v] = id;
        member[v] = 0;
      }
      acd.cliques.push_back(std::move(comp));
    }
  }
  // Leftover candidates join the clique holding most of their neighbors when
  // every condition survives; ties go to the lower clique index.
  for (NodeId v = 0; v < n; ++v) {
    if (!candidate[v] || acd.cls[v] == AcdClass::Dense) continue;
    std::unordered_map<std::int64_t, std::size_t> hits;
    for (NodeId u : g.neighbors(v)) {
      if (acd.clique_of[u] >= 0) ++hits[acd.clique_of[u]];
    }
    std::int64_t best = -1;
    std::size_t most = 0;
    for (auto [id, k] : hits) {
      if (k > most || (k == most && id < best)) best = id, most = k;
    }
    if (best < 0) continue;
    auto& c = acd.cliques[static_cast<std::size_t>(best)];
    for (NodeId u : c) member[u] = 1;
    const bool ok = can_join(g, c, v, member, params.eps_ac);
    for (NodeId u : c) member[u] = 0;
    if (!ok) continue;
    c.insert(std::lower_bound(c.begin(), c.end(), v), v);
    acd.cls[v] = AcdClass::Dense;
    acd.clique_of[v] = best;
  }
  for (NodeId v = 0; v < n; ++v) {
    switch (acd.cls[v]) {
      case AcdClass::Sparse: acd.v_sparse.push_back(v); break;
      case AcdClass::Uneven: acd.v_uneven.push_back(v); break;
      case AcdClass::LowDegree: acd.v_low.push_back(v); break;
      case AcdClass::Unplaced: acd.v_unplaced.push_back(v); break;
      case AcdClass::Dense: break;
    }
  }
  return acd;
}

std::vector<AcdViolation> check_acd(const D1LCInstance& inst, const AlmostCliqueDecomposition& acd,
                                    const AcdParams& params) {
  const Graph& g = inst.graph;
  const std::size_t n = g.node_count();
  std::vector<AcdViolation> out;
  std::vector<int> hits(n, 0);
  for (NodeId v : acd.v_sparse) {
    ++hits[v];
    if (compute_sparsity(inst, v) < times(params.eps_sp, g.degree(v))) out.push_back({v, "(i) not sparse"});
  }
  for (NodeId v : acd.v_uneven) {
    ++hits[v];
    if (compute_unevenness(inst, v) < times(params.eps_sp, g.degree(v))) out.push_back({v, "(ii) not uneven"});
  }
  for (NodeId v : acd.v_low) {
    ++hits[v];
    if (g.degree(v) >= params.min_degree) out.push_back({v, "low-degree class above threshold"});
  }
  for (NodeId v : acd.v_unplaced) {
    ++hits[v];
    out.push_back({v, "unplaced"});
  }
  std::vector<char> member(n, 0);
  for (const auto& c : acd.cliques) {
    for (NodeId v : c) {
      ++hits[v];
      member[v] = 1;
    }
    for (NodeId v : c) {
      if (Rational(static_cast<unsigned long>(g.degree(v))) > times(1 + params.eps_ac, c.size())) {
        out.push_back({v, "(iii) degree too large for clique"});
      }
      if (Rational(static_cast<unsigned long>(c.size())) > times(1 + params.eps_ac, inside(g, v, member))) {
        out.push_back({v, "(iv) too few neighbors in clique"});
      }
    }
    // Induced diameter <= 2: every pair adjacent or with a common neighbor in C.
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        if (g.adjacent(c[i], c[j])) continue;
        bool linked = false;
        for (NodeId w : g.neighbors(c[i])) {
          if (member[w] && g.adjacent(w, c[j])) {
            linked = true;
            break;
          }
        }
        if (!linked) out.push_back({c[i], "clique diameter exceeds 2"});
      }
    }
    for (NodeId v : c) member[v] = 0;
  }
  for (NodeId v = 0; v < n; ++v) {
    if (hits[v] != 1) out.push_back({v, "not covered exactly once"});
  }
  return out;
}

Rational heavy_mass(const D1LCInstance& inst, NodeId v, Color c) {
  Rational sum = 0;
  for (NodeId u : inst.graph.neighbors(v)) {
    if (inst.palette(u).contains(c)) sum += Rational(1, static_cast<unsigned long>(inst.palette(u).size()));
  }
  return sum;
}

namespace {

// Sum of H(c) over heavy colors, compared to eps4*d(v). Floating point first,
// exact arithmetic when a comparison is within rounding distance.
bool heavy_node(const D1LCInstance& inst, NodeId v, const AcdParams& params) {
  constexpr double slop = 1e-9;
  std::unordered_map<Color, double> mass;
  for (NodeId u : inst.graph.neighbors(v)) {
    const double w = 1.0 / static_cast<double>(inst.palette(u).size());
    for (Color c : inst.palette(u)) mass[c] += w;
  }
  const double thr = to_double(params.heavy_threshold);
  std::vector<Color> colors;
  colors.reserve(mass.size());
  for (const auto& [c, m] : mass) colors.push_back(c);
  std::sort(colors.begin(), colors.end());
  double total = 0;
  for (Color c : colors) {
    const double m = mass[c];
    bool heavy = m >= thr;
    if (std::abs(m - thr) <= slop * std::max(1.0, thr)) {
      Rational hm = heavy_mass(inst, v, c);
      heavy = hm >= params.heavy_threshold;
    }
    if (heavy) total += m;
  }
  const Rational bound_q = times(params.eps_4, inst.degree(v));
  const double bound = to_double(bound_q);
  if (std::abs(total - bound) > slop * std::max(1.0, bound)) return total >= bound;
  Rational exact_total = 0;
  for (Color c : colors) {
    Rational hm = heavy_mass(inst, v, c);
    if (hm >= params.heavy_threshold) exact_total += hm;
  }
  return exact_total >= bound_q;
}

}  // namespace

VStartClassification classify_vstart(const D1LCInstance& inst, const AlmostCliqueDecomposition& acd,
                                     const AcdParams& params) {
  const Graph& g = inst.graph;
  const std::size_t n = g.node_count();
  VStartClassification out;
  std::vector<char> easy(n, 0), heavy(n, 0);
  for (NodeId v : acd.v_uneven) easy[v] = 1;
  for (NodeId v : acd.v_sparse) {
    const std::size_t d = g.degree(v);
    std::size_t big = 0, dense = 0;
    for (NodeId u : g.neighbors(v)) {
      big += 3 * g.degree(u) > 2 * d ? 1 : 0;
      dense += acd.cls[u] == AcdClass::Dense ? 1 : 0;
    }
    const bool balanced = Rational(static_cast<unsigned long>(big)) >= times(params.eps_1, d);
    const bool disc = compute_discrepancy(inst, v) >= times(params.eps_2, d);
    if (balanced) out.v_balanced.push_back(v);
    if (disc) out.v_disc.push_back(v);
    if (balanced || disc || Rational(static_cast<unsigned long>(dense)) >= times(params.eps_3, d)) easy[v] = 1;
  }
  for (NodeId v : acd.v_sparse) {
    if (!easy[v] && heavy_node(inst, v, params)) heavy[v] = 1;
  }
  for (NodeId v : acd.v_sparse) {
    if (easy[v] || heavy[v]) continue;
    std::size_t easy_nbrs = 0;
    for (NodeId u : g.neighbors(v)) easy_nbrs += easy[u] ? 1 : 0;
    if (Rational(static_cast<unsigned long>(easy_nbrs)) >= times(params.eps_5, g.degree(v))) out.v_start.push_back(v);
  }
  for (NodeId v = 0; v < n; ++v) {
    if (easy[v]) out.v_easy.push_back(v);
    if (heavy[v]) out.v_heavy.push_back(v);
  }
  return out;
}

NodeId select_leader(const D1LCInstance& inst, const std::vector<NodeId>& clique) {
  if (clique.empty()) throw Error(Errc::EmptyClique, "cannot select a leader of an empty clique");
  NodeId best = clique.front();
  Rational best_value = compute_slackability(inst, best).first;
  for (NodeId v : clique) {
    Rational s = compute_slackability(inst, v).first;
    if (s < best_value || (s == best_value && v < best)) {
      best = v;
      best_value = s;
    }
  }
  return best;
}

bool is_low_slack_clique(const D1LCInstance& inst, const std::vector<NodeId>&, NodeId leader, std::uint64_t ell) {
  return compute_slackability(inst, leader).first <= Rational(static_cast<unsigned long>(ell));
}

CliqueRoles compute_outliers(const D1LCInstance& inst, const std::vector<NodeId>& clique, NodeId leader,
                             std::uint64_t ell) {
  if (clique.empty()) throw Error(Errc::EmptyClique, "cannot compute roles of an empty clique");
  const Graph& g = inst.graph;
  const std::size_t size = clique.size();
  std::vector<NodeId> sorted(clique);
  std::sort(sorted.begin(), sorted.end());
  std::vector<char> out(size, 0);
  auto ceil_div = [](std::size_t a, std::size_t b) { return (a + b - 1) / b; };

  std::vector<std::size_t> order(size);
  for (std::size_t i = 0; i < size; ++i) order[i] = i;
  const std::size_t few = std::min(size, ceil_div(std::max(g.degree(leader), size), 3));
  std::vector<std::size_t> common(size);
  for (std::size_t i = 0; i < size; ++i) common[i] = g.common_neighbors(sorted[i], leader);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return common[a] < common[b]; });
  for (std::size_t i = 0; i < few; ++i) out[order[i]] = 1;

  for (std::size_t i = 0; i < size; ++i) order[i] = i;
  const std::size_t top = std::min(size, ceil_div(size, 6));
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return g.degree(sorted[a]) > g.degree(sorted[b]); });
  for (std::size_t i = 0; i < top; ++i) out[order[i]] = 1;

  for (std::size_t i = 0; i < size; ++i) {
    if (!g.adjacent(sorted[i], leader)) out[i] = 1;
  }
  CliqueRoles roles;
  roles.leader = leader;
  for (std::size_t i = 0; i < size; ++i) (out[i] ? roles.outliers : roles.inliers).push_back(sorted[i]);
  roles.low_slack = is_low_slack_clique(inst, clique, leader, ell);
  return roles;
}

}  // namespace d1lc
