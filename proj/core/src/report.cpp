#include "d1lc/report.hpp"


#include <charconv>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

namespace d1lc {

namespace {

std::string hex(std::uint64_t x) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + std::to_string(xs[i]);
  return s;
}

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

std::string percent(std::uint64_t part, std::uint64_t whole) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << (whole ? 100.0 * static_cast<double>(part) / whole : 0.0) << '%';
  return os.str();
}

}  // namespace

std::string format_report(const RunReport& r) {
  std::ostringstream os;
  os << "verdict: " << (r.verdict.valid ? "valid" : "invalid") << '\n';
  os << "violation: " << r.verdict.message() << '\n';
  os << "mode: " << r.mode << '\n';
  os << "partition: " << (r.partition ? "on" : "off") << '\n';
  os << "nodes: " << r.nodes << '\n';
  os << "edges: " << r.edges << '\n';
  os << "max_degree: " << r.max_degree << '\n';
  os << "coloring_hash: " << hex(r.coloring_hash) << '\n';
  os << "transcript_hash: " << hex(r.transcript_hash) << '\n';

  os << "\n[space]\n";
  os << "local_space_words: " << r.local_space_words << '\n';
  os << "machine_count: " << r.machine_count << '\n';
  os << "initial_load: " << r.initial_load << '\n';
  os << "peak_words_per_machine: " << r.stats.peak_words_per_machine << '\n';

  os << "\n[rounds]\n";
  os << "total: " << r.stats.rounds_elapsed << '\n';
  for (const auto& [k, v] : r.stats.rounds_by_category) os << k << ": " << v << '\n';

  os << "\n[messages]\n";
  os << "total_messages: " << r.stats.total_messages << '\n';
  os << "total_words: " << r.stats.total_words << '\n';

  os << "\n[primitives]\n";
  for (const auto& [k, v] : r.stats.primitive_invocations) os << k << ": " << v << '\n';

  os << "\n[recursion]\n";
  os << "depth: " << r.depth << '\n';
  os << "depth_bound: " << r.depth_bound << '\n';
  os << "final_greedy: " << r.final_greedy << '\n';

  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    const auto& t = r.trace[i];
    os << "\n[partition " << i << "]\n";
    os << "part: " << t.part << '\n';
    os << "depth: " << t.depth << '\n';
    os << "nodes: " << t.nodes << '\n';
    os << "max_degree: " << t.max_degree << '\n';
    os << "mid_nodes: " << t.mid_nodes << '\n';
    os << "bin_sizes: " << join(t.bin_sizes) << '\n';
    os << "bin_max_degrees: " << join(t.bin_max_degrees) << '\n';
    os << "seed_index: " << t.seed_index << '\n';
  }

  for (std::size_t i = 0; i < r.levels.size(); ++i) {
    const auto& l = r.levels[i];
    os << "\n[level " << i << "]\n";
    os << "level: " << l.level << '\n';
    os << "nodes: " << l.nodes << '\n';
    os << "max_degree: " << l.max_degree << '\n';
    os << "colored_by_phases: " << l.colored_by_phases << '\n';
    os << "put_aside: " << l.put_aside << '\n';
    os << "deferred: " << l.deferred << '\n';
    os << "late_deferred: " << l.late_deferred << '\n';
    os << "fallback_nodes: " << l.fallback_nodes << '\n';
  }

  for (std::size_t i = 0; i < r.phases.size(); ++i) {
    const auto& p = r.phases[i];
    os << "\n[phase " << i << "]\n";
    os << "name: " << p.name << '\n';
    os << "kind: " << subroutine_name(p.kind) << '\n';
    os << "subjects: " << p.subjects << '\n';
    os << "seed_bits: " << p.seed_bits << '\n';
    os << "chosen_seed: " << p.chosen_seed << '\n';
    os << "failures: " << p.failures << '\n';
    os << "mean_failures: " << (p.enumerated ? to_string(p.mean_failures) : std::string("n/a")) << '\n';
    os << "deferred: " << p.deferred << '\n';
    os << "colored: " << p.colored << '\n';
    os << "rounds: " << p.rounds << '\n';
    os << "color_count: " << p.color_count << '\n';
    os << "output_bits: " << p.output_bits << '\n';
    os << "peak_ball_words: " << p.peak_ball_words << '\n';
  }

  os << "\n[warnings]\n";
  os << "count: " << r.warnings.size() << '\n';
  for (std::size_t i = 0; i < r.warnings.size(); ++i) os << "warning." << i << ": " << r.warnings[i] << '\n';

  os << "\n[config]\n";
  for (const auto& [k, v] : r.config) os << k << ": " << v << '\n';

  os << "\n[timing]\n";
  os << "wall_clock_seconds: " << std::fixed << std::setprecision(6) << r.wall_clock_seconds << '\n';
  return os.str();
}

std::string ReportBlock::get(const std::string& key, const std::string& fallback) const {
  for (const auto& [k, v] : entries)
    if (k == key) return v;
  return fallback;
}

std::uint64_t ReportBlock::number(const std::string& key) const {
  const std::string s = get(key, "0");
  std::uint64_t x = 0;
  std::from_chars(s.data(), s.data() + s.size(), x);
  return x;
}

std::vector<ReportBlock> parse_report(std::string_view text) {
  std::vector<ReportBlock> blocks(1);
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string line = trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      blocks.push_back({line.substr(1, line.size() - 2), {}});
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    blocks.back().entries.emplace_back(trim(line.substr(0, colon)), trim(line.substr(colon + 1)));
  }
  return blocks;
}

std::string summarize_report(const std::vector<ReportBlock>& blocks) {
  static const ReportBlock empty;
  auto find = [&](const std::string& name) -> const ReportBlock& {
    for (const auto& b : blocks)
      if (b.name == name) return b;
    return empty;
  };
  const ReportBlock& head = blocks.empty() ? empty : blocks.front();
  const ReportBlock& rounds = find("rounds");
  const ReportBlock& space = find("space");
  const ReportBlock& messages = find("messages");
  const ReportBlock& recursion = find("recursion");

  std::ostringstream os;
  auto row = [&](const std::string& k, const std::string& v) { os << std::left << std::setw(22) << k << v << '\n'; };

  row("verdict", head.get("verdict", "none"));
  row("nodes", std::to_string(head.number("nodes")));
  row("edges", std::to_string(head.number("edges")));

  const std::uint64_t total = rounds.number("total");
  std::uint64_t category_sum = 0;
  row("rounds", std::to_string(total));
  for (const auto& [k, v] : rounds.entries) {
    if (k == "total") continue;
    const std::uint64_t x = rounds.number(k);
    category_sum += x;
    row("  " + k, std::to_string(x));
  }
  row("  category sum", std::to_string(category_sum));
  const std::uint64_t fallback = rounds.number("fallback");
  row("fallback rounds", std::to_string(fallback));
  row("fallback share", percent(fallback, total));
  row("non-fallback rounds", std::to_string(total - std::min(total, fallback)));

  const std::uint64_t peak = space.number("peak_words_per_machine");
  const std::uint64_t budget = space.number("local_space_words");
  row("peak space", std::to_string(peak) + " / " + std::to_string(budget) + " words (" + percent(peak, budget) + ")");
  row("messages", std::to_string(messages.number("total_messages")) + " (" +
                      std::to_string(messages.number("total_words")) + " words)");

  std::uint64_t phases = 0, phase_rounds = 0, phase_colored = 0, phase_deferred = 0, phase_failures = 0;
  for (const auto& b : blocks) {
    if (b.name.rfind("phase ", 0) != 0) continue;
    ++phases;
    phase_rounds += b.number("rounds");
    phase_colored += b.number("colored");
    phase_deferred += b.number("deferred");
    phase_failures += b.number("failures");
  }
  row("phases", std::to_string(phases));
  row("  rounds", std::to_string(phase_rounds));
  row("  colored", std::to_string(phase_colored));
  row("  failures", std::to_string(phase_failures));
  row("  deferred", std::to_string(phase_deferred));

  os << "deferral history\n";
  os << "  " << std::left << std::setw(7) << "level" << std::setw(8) << "nodes" << std::setw(9) << "colored"
     << std::setw(11) << "put_aside" << std::setw(10) << "deferred" << std::setw(6) << "late" << "fallback\n";
  std::uint64_t levels = 0;
  for (const auto& b : blocks) {
    if (b.name.rfind("level ", 0) != 0) continue;
    ++levels;
    os << "  " << std::left << std::setw(7) << b.number("level") << std::setw(8) << b.number("nodes") << std::setw(9)
       << b.number("colored_by_phases") << std::setw(11) << b.number("put_aside") << std::setw(10)
       << b.number("deferred") << std::setw(6) << b.number("late_deferred") << b.number("fallback_nodes") << '\n';
  }
  if (levels == 0) os << "  (none)\n";

  row("recursion depth",
      std::to_string(recursion.number("depth")) + " (bound " + std::to_string(recursion.number("depth_bound")) + ")");
  row("final greedy", std::to_string(recursion.number("final_greedy")));
  row("warnings", std::to_string(find("warnings").number("count")));
  return os.str();
}

std::string strip_wall_clock(std::string_view text) {
  std::string out;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = text.substr(0, nl == std::string_view::npos ? text.size() : nl + 1);
    if (line.rfind("wall_clock_seconds:", 0) != 0) out += line;
    text.remove_prefix(line.size());
  }
  return out;
}

std::uint64_t coloring_hash(const ColoringState& st) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(st.size());
  for (NodeId v = 0; v < st.size(); ++v) {
    mix(static_cast<std::uint64_t>(st.status(v)));
    mix(st.colored(v) ? st.color(v) : 0);
  }
  return h;
}

std::uint64_t recursion_depth_bound(const Config& cfg, std::uint64_t n) {
  if (n < 4) return 0;
  const double delta = to_double(cfg.delta);
  const double num = 1.0 - static_cast<double>(cfg.mid_degree_exponent) * delta;
  if (num <= 0.0 || bin_count(cfg, n) <= 2) return 0;
  const double logn2 = 1.0 / std::log2(static_cast<double>(n));
  return static_cast<std::uint64_t>(std::ceil(num / delta / (1.0 - logn2) - 1e-12));
}

}  // namespace d1lc
