#pragma once

#include "d1lc/graph.hpp"

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace d1lc {

/// Sorted set of colors available to one node.
class Palette {
 public:
  Palette() = default;
  explicit Palette(std::vector<Color> colors);
  Palette(std::initializer_list<Color> colors) : Palette(std::vector<Color>(colors)) {}

  /// The contiguous palette {0, ..., size-1}.
  static Palette range(std::size_t size);

  std::size_t size() const noexcept { return colors_.size(); }
  bool empty() const noexcept { return colors_.empty(); }
  bool contains(Color c) const noexcept;
  std::span<const Color> colors() const noexcept { return colors_; }
  auto begin() const noexcept { return colors_.begin(); }
  auto end() const noexcept { return colors_.end(); }

  friend bool operator==(const Palette&, const Palette&) = default;

 private:
  std::vector<Color> colors_;
};

/// Graph plus palettes with p(v) >= d(v)+1 for every node. `labels[i]` is the
/// id node i had in the top-level input, so sub-instances can be mapped back.
struct D1LCInstance {
  Graph graph;
  std::vector<Palette> palettes;
  std::vector<NodeId> labels;

  /// Validates the D1LC guarantee (PaletteTooSmall otherwise). Empty `labels`
  /// means identity labels.
  static D1LCInstance create(Graph graph, std::vector<Palette> palettes, std::vector<NodeId> labels = {});

  std::size_t node_count() const noexcept { return graph.node_count(); }
  std::size_t degree(NodeId v) const noexcept { return graph.degree(v); }
  const Palette& palette(NodeId v) const noexcept { return palettes[v]; }
  /// Words needed to store the instance: one per node, two per edge, one per
  /// palette entry.
  std::size_t words() const noexcept;
};

enum class NodeStatus : std::uint8_t { Uncolored, Colored, Deferred };

class ColoringState {
 public:
  ColoringState() = default;
  explicit ColoringState(std::size_t n) : status_(n, NodeStatus::Uncolored), color_(n, 0) {}

  std::size_t size() const noexcept { return status_.size(); }
  NodeStatus status(NodeId v) const noexcept { return status_[v]; }
  bool colored(NodeId v) const noexcept { return status_[v] == NodeStatus::Colored; }
  bool deferred(NodeId v) const noexcept { return status_[v] == NodeStatus::Deferred; }
  bool uncolored(NodeId v) const noexcept { return status_[v] == NodeStatus::Uncolored; }
  /// Color of a Colored node; meaningless otherwise.
  Color color(NodeId v) const noexcept { return color_[v]; }

  void set_color(NodeId v, Color c) noexcept {
    status_[v] = NodeStatus::Colored;
    color_[v] = c;
  }
  void defer(NodeId v) noexcept { status_[v] = NodeStatus::Deferred; }
  void reset(NodeId v) noexcept { status_[v] = NodeStatus::Uncolored; }

  std::size_t count(NodeStatus s) const noexcept;
  std::vector<NodeId> nodes_with(NodeStatus s) const;

  friend bool operator==(const ColoringState&, const ColoringState&) = default;

 private:
  std::vector<NodeStatus> status_;
  std::vector<Color> color_;
};

/// Palette of v minus the colors of its Colored neighbors.
std::vector<Color> residual_palette(const D1LCInstance& inst, const ColoringState& st, NodeId v);
/// Number of Uncolored neighbors (Colored and Deferred neighbors drop out).
std::size_t residual_degree(const D1LCInstance& inst, const ColoringState& st, NodeId v);

/// Throws ImproperInput if a Colored node uses an off-palette color or shares
/// a color with a Colored neighbor.
void check_partial_coloring(const D1LCInstance& inst, const ColoringState& st);

/// Instance induced on Uncolored and Deferred nodes with the colors of Colored
/// neighbors removed. `origin`, if given, receives the parent id of each node.
D1LCInstance reduce_instance(const D1LCInstance& inst, const ColoringState& st,
                             std::vector<NodeId>* origin = nullptr);
/// Same, restricted to the listed nodes (sorted, none Colored).
D1LCInstance reduce_instance(const D1LCInstance& inst, const ColoringState& st, std::span<const NodeId> keep,
                             std::vector<NodeId>* origin = nullptr);

enum class Violation { None, Uncolored, OffPalette, Monochromatic };

struct Verdict {
  bool valid = true;
  Violation kind = Violation::None;
  NodeId node = 0;
  NodeId other = 0;
  std::string message() const;
};

Verdict verify_coloring(const D1LCInstance& inst, const ColoringState& st);

}  // namespace d1lc
