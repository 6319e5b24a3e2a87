#include "d1lc/io.hpp"

#include "d1lc/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace d1lc {

namespace {

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  return line;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
T number(std::string_view tok, std::size_t line, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw Error(Errc::Parse, "line " + std::to_string(line) + ": bad " + what + " '" + std::string(tok) + "'");
  }
  return value;
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line = 0;
  while (!text.empty()) {
    ++line;
    const auto nl = text.find('\n');
    f(strip_comment(text.substr(0, nl)), line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

}  // namespace

EdgeList parse_edges(std::string_view text) {
  EdgeList el;
  for_each_line(text, [&](std::string_view s, std::size_t line) {
    const auto t = tokens(s);
    if (t.empty()) return;
    if (t.size() != 2) {
      throw Error(Errc::Parse, "line " + std::to_string(line) + ": expected \"u v\"");
    }
    const auto u = number<NodeId>(t[0], line, "node id");
    const auto v = number<NodeId>(t[1], line, "node id");
    el.edges.emplace_back(u, v);
    el.node_count = std::max<std::size_t>(el.node_count, std::max(u, v) + std::size_t{1});
  });
  return el;
}

std::map<NodeId, std::vector<Color>> parse_palettes(std::string_view text) {
  std::map<NodeId, std::vector<Color>> out;
  for_each_line(text, [&](std::string_view s, std::size_t line) {
    if (tokens(s).empty()) return;
    const auto colon = s.find(':');
    if (colon == std::string_view::npos) {
      throw Error(Errc::Parse, "line " + std::to_string(line) + ": expected \"v: c1 c2 ...\"");
    }
    const auto head = tokens(s.substr(0, colon));
    if (head.size() != 1) throw Error(Errc::Parse, "line " + std::to_string(line) + ": expected one node id");
    const auto v = number<NodeId>(head[0], line, "node id");
    if (out.count(v)) throw Error(Errc::Parse, "line " + std::to_string(line) + ": duplicate palette for node");
    std::vector<Color> colors;
    for (auto tok : tokens(s.substr(colon + 1))) colors.push_back(number<Color>(tok, line, "color"));
    out.emplace(v, std::move(colors));
  });
  return out;
}

D1LCInstance load_instance(std::string_view graph_text, std::string_view palette_text) {
  const auto el = parse_edges(graph_text);
  const auto pals = parse_palettes(palette_text);
  std::size_t n = el.node_count;
  if (!pals.empty()) n = std::max<std::size_t>(n, pals.rbegin()->first + std::size_t{1});
  Graph g = Graph::from_edges(n, el.edges);
  std::vector<Palette> palettes(n);
  for (NodeId v = 0; v < n; ++v) {
    auto it = pals.find(v);
    palettes[v] = it == pals.end() ? Palette::range(g.degree(v) + 1) : Palette(it->second);
  }
  return D1LCInstance::create(std::move(g), std::move(palettes));
}

D1LCInstance load_instance_files(const std::string& graph_path, const std::string& palette_path) {
  const std::string g = read_file(graph_path);
  const std::string p = palette_path.empty() ? std::string() : read_file(palette_path);
  return load_instance(g, p);
}

std::string format_graph(const D1LCInstance& inst) {
  std::ostringstream os;
  os << "# n=" << inst.node_count() << " m=" << inst.graph.edge_count() << "\n";
  for (NodeId v = 0; v < inst.node_count(); ++v) {
    for (NodeId u : inst.graph.neighbors(v)) {
      if (u > v) os << v << ' ' << u << '\n';
    }
  }
  return os.str();
}

std::string format_palettes(const D1LCInstance& inst) {
  std::ostringstream os;
  for (NodeId v = 0; v < inst.node_count(); ++v) {
    os << v << ':';
    for (Color c : inst.palette(v)) os << ' ' << c;
    os << '\n';
  }
  return os.str();
}

std::string format_coloring(const ColoringState& st) {
  std::ostringstream os;
  for (NodeId v = 0; v < st.size(); ++v) {
    if (st.colored(v)) os << v << ": " << st.color(v) << '\n';
  }
  return os.str();
}

ColoringState parse_coloring(std::string_view text, std::size_t n) {
  ColoringState st(n);
  for_each_line(text, [&](std::string_view s, std::size_t line) {
    if (tokens(s).empty()) return;
    const auto colon = s.find(':');
    if (colon == std::string_view::npos) throw Error(Errc::Parse, "line " + std::to_string(line) + ": expected \"v: c\"");
    const auto head = tokens(s.substr(0, colon));
    const auto tail = tokens(s.substr(colon + 1));
    if (head.size() != 1 || tail.size() != 1) {
      throw Error(Errc::Parse, "line " + std::to_string(line) + ": expected \"v: c\"");
    }
    const auto v = number<NodeId>(head[0], line, "node id");
    if (v >= n) throw Error(Errc::Parse, "line " + std::to_string(line) + ": node " + std::to_string(v) + " out of range");
    st.set_color(v, number<Color>(tail[0], line, "color"));
  });
  return st;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Parse, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Parse, "cannot write " + path);
  out << text;
}

}  // namespace d1lc
