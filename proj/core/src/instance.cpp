#include "d1lc/instance.hpp"

#include "d1lc/error.hpp"

#include <algorithm>
#include <numeric>

namespace d1lc {

Palette::Palette(std::vector<Color> colors) : colors_(std::move(colors)) {
  std::sort(colors_.begin(), colors_.end());
  colors_.erase(std::unique(colors_.begin(), colors_.end()), colors_.end());
}

Palette Palette::range(std::size_t size) {
  Palette p;
  p.colors_.resize(size);
  std::iota(p.colors_.begin(), p.colors_.end(), Color{0});
  return p;
}

bool Palette::contains(Color c) const noexcept { return std::binary_search(colors_.begin(), colors_.end(), c); }

D1LCInstance D1LCInstance::create(Graph graph, std::vector<Palette> palettes, std::vector<NodeId> labels) {
  const std::size_t n = graph.node_count();
  if (palettes.size() != n) throw Error(Errc::BadParameters, "palette count does not match node count");
  if (labels.empty()) {
    labels.resize(n);
    std::iota(labels.begin(), labels.end(), NodeId{0});
  } else if (labels.size() != n) {
    throw Error(Errc::BadParameters, "label count does not match node count");
  }
  for (NodeId v = 0; v < n; ++v) {
    if (palettes[v].size() <= graph.degree(v)) {
      throw Error(Errc::PaletteTooSmall,
                  "node " + std::to_string(labels[v]) + " has " + std::to_string(palettes[v].size()) +
                      " colors for degree " + std::to_string(graph.degree(v)),
                  labels[v]);
    }
  }
  return D1LCInstance{std::move(graph), std::move(palettes), std::move(labels)};
}

std::size_t D1LCInstance::words() const noexcept {
  std::size_t w = node_count() + 2 * graph.edge_count();
  for (const auto& p : palettes) w += p.size();
  return w;
}

std::size_t ColoringState::count(NodeStatus s) const noexcept {
  return static_cast<std::size_t>(std::count(status_.begin(), status_.end(), s));
}

std::vector<NodeId> ColoringState::nodes_with(NodeStatus s) const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < status_.size(); ++v) {
    if (status_[v] == s) out.push_back(v);
  }
  return out;
}

std::vector<Color> residual_palette(const D1LCInstance& inst, const ColoringState& st, NodeId v) {
  std::vector<Color> used;
  for (NodeId u : inst.graph.neighbors(v)) {
    if (st.colored(u)) used.push_back(st.color(u));
  }
  const auto& pal = inst.palette(v);
  if (used.empty()) return {pal.begin(), pal.end()};
  std::sort(used.begin(), used.end());
  std::vector<Color> out;
  out.reserve(pal.size());
  std::set_difference(pal.begin(), pal.end(), used.begin(), used.end(), std::back_inserter(out));
  return out;
}

std::size_t residual_degree(const D1LCInstance& inst, const ColoringState& st, NodeId v) {
  std::size_t d = 0;
  for (NodeId u : inst.graph.neighbors(v)) d += st.uncolored(u) ? 1 : 0;
  return d;
}

void check_partial_coloring(const D1LCInstance& inst, const ColoringState& st) {
  for (NodeId v = 0; v < inst.node_count(); ++v) {
    if (!st.colored(v)) continue;
    if (!inst.palette(v).contains(st.color(v))) {
      throw Error(Errc::ImproperInput, "node " + std::to_string(inst.labels[v]) + " colored off its palette",
                  inst.labels[v]);
    }
    for (NodeId u : inst.graph.neighbors(v)) {
      if (u > v && st.colored(u) && st.color(u) == st.color(v)) {
        throw Error(Errc::ImproperInput,
                    "edge " + std::to_string(inst.labels[v]) + "-" + std::to_string(inst.labels[u]) +
                        " is monochromatic",
                    inst.labels[v]);
      }
    }
  }
}

D1LCInstance reduce_instance(const D1LCInstance& inst, const ColoringState& st, std::vector<NodeId>* origin) {
  std::vector<NodeId> keep;
  for (NodeId v = 0; v < inst.node_count(); ++v) {
    if (!st.colored(v)) keep.push_back(v);
  }
  return reduce_instance(inst, st, keep, origin);
}

D1LCInstance reduce_instance(const D1LCInstance& inst, const ColoringState& st, std::span<const NodeId> keep,
                             std::vector<NodeId>* origin) {
  check_partial_coloring(inst, st);
  std::vector<Palette> palettes;
  std::vector<NodeId> labels;
  palettes.reserve(keep.size());
  labels.reserve(keep.size());
  for (NodeId v : keep) {
    if (st.colored(v)) throw Error(Errc::BadParameters, "reduce_instance asked to keep a colored node", v);
    palettes.emplace_back(residual_palette(inst, st, v));
    labels.push_back(inst.labels[v]);
  }
  if (origin) origin->assign(keep.begin(), keep.end());
  return D1LCInstance::create(inst.graph.induced(keep), std::move(palettes), std::move(labels));
}

std::string Verdict::message() const {
  switch (kind) {
    case Violation::None: return "valid";
    case Violation::Uncolored: return "Uncolored node " + std::to_string(node);
    case Violation::OffPalette: return "OffPalette node " + std::to_string(node);
    case Violation::Monochromatic:
      return "Monochromatic edge " + std::to_string(node) + "-" + std::to_string(other);
  }
  return "unknown";
}

Verdict verify_coloring(const D1LCInstance& inst, const ColoringState& st) {
  if (st.size() != inst.node_count()) return {false, Violation::Uncolored, static_cast<NodeId>(st.size()), 0};
  for (NodeId v = 0; v < inst.node_count(); ++v) {
    if (!st.colored(v)) return {false, Violation::Uncolored, inst.labels[v], 0};
    if (!inst.palette(v).contains(st.color(v))) return {false, Violation::OffPalette, inst.labels[v], 0};
  }
  for (NodeId v = 0; v < inst.node_count(); ++v) {
    for (NodeId u : inst.graph.neighbors(v)) {
      if (u > v && st.color(u) == st.color(v)) {
        return {false, Violation::Monochromatic, inst.labels[v], inst.labels[u]};
      }
    }
  }
  return {};
}

}  // namespace d1lc
