#pragma once

#include "d1lc/instance.hpp"

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace d1lc {

struct EdgeList {
  std::size_t node_count = 0;  // max endpoint + 1
  std::vector<std::pair<NodeId, NodeId>> edges;
};

/// One "u v" per line; '#' starts a comment. Throws ParseError with the line
/// number.
EdgeList parse_edges(std::string_view text);
/// "v: c1 c2 ..." per line. Throws ParseError.
std::map<NodeId, std::vector<Color>> parse_palettes(std::string_view text);

/// Nodes are 0..max id seen in either description. Nodes without a palette
/// line get [0, d(v)].
D1LCInstance load_instance(std::string_view graph_text, std::string_view palette_text = {});
D1LCInstance load_instance_files(const std::string& graph_path, const std::string& palette_path = {});

std::string format_graph(const D1LCInstance& inst);
std::string format_palettes(const D1LCInstance& inst);
/// "v: c" for every Colored node, by id.
std::string format_coloring(const ColoringState& st);
/// Nodes without a line stay Uncolored. Throws ParseError.
ColoringState parse_coloring(std::string_view text, std::size_t n);

/// Throws ParseError when the file cannot be read.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

}  // namespace d1lc
