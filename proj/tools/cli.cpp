#include "cli.hpp"

#include "d1lc/config.hpp"
#include "d1lc/error.hpp"
#include "d1lc/io.hpp"
#include "d1lc/pipeline.hpp"
#include "d1lc/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <map>
#include <ostream>

namespace d1lc::cli {

namespace {

bool is_input_error(Errc code) {
  switch (code) {
    case Errc::Parse:
    case Errc::BadConfig:
    case Errc::NonSymmetricEdge:
    case Errc::SelfLoop:
    case Errc::PaletteTooSmall:
      return true;
    default:
      return false;
  }
}

int report_error(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << '\n';
  return is_input_error(e.code()) ? kExitInput : kExitFailure;
}

std::string kebab(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

}  // namespace

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  D1LCInstance inst;
  Config cfg;
  try {
    if (!options.config_file.empty()) cfg = load_config_file(options.config_file);
    for (const auto& [k, v] : options.settings) apply_setting(cfg, k, v);
    if (options.no_partition) cfg.partition = false;
    validate(cfg);
    inst = load_instance_files(options.graph, options.palettes);
  } catch (const Error& e) {
    return report_error(e, err);
  }
  try {
    auto result = run_pipeline(inst, cfg);
    if (!options.output.empty()) write_file(options.output, format_coloring(result.state));
    if (!options.report.empty()) write_file(options.report, format_report(result.report));
    const auto& verdict = result.report.verdict;
    out << (verdict.valid ? "valid" : "invalid: " + verdict.message()) << '\n';
    return verdict.valid ? 0 : kExitInvalid;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_generate(const GenerateOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const auto inst = generate(options.params);
    const std::string graph = format_graph(inst);
    if (options.graph_out.empty()) {
      out << graph;
    } else {
      write_file(options.graph_out, graph);
    }
    if (!options.palettes_out.empty()) write_file(options.palettes_out, format_palettes(inst));
    return 0;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_verify(const std::string& graph, const std::string& palettes, const std::string& coloring, std::ostream& out,
               std::ostream& err) {
  try {
    const auto inst = load_instance_files(graph, palettes);
    const auto st = parse_coloring(read_file(coloring), inst.node_count());
    const auto verdict = verify_coloring(inst, st);
    out << (verdict.valid ? "valid" : "invalid: " + verdict.message()) << '\n';
    return verdict.valid ? 0 : kExitInvalid;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_report(const std::string& report, std::ostream& out, std::ostream& err) {
  try {
    out << summarize_report(parse_report(read_file(report)));
    return 0;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deterministic (degree+1)-list coloring on a simulated MPC substrate", "d1lc"};
  app.require_subcommand(1);

  RunOptions run;
  std::map<std::string, std::string> settings;
  auto* run_cmd = app.add_subcommand("run", "Color an instance, verify it and write the report");
  run_cmd->add_option("graph", run.graph, "Edge list file")->required();
  run_cmd->add_option("-p,--palettes", run.palettes, "Palette file");
  run_cmd->add_option("-c,--config", run.config_file, "Config file (key = value)");
  run_cmd->add_option("-o,--output", run.output, "Coloring output file");
  run_cmd->add_option("-r,--report", run.report, "Report output file");
  run_cmd->add_flag("--no-partition", run.no_partition, "Skip the degree-reducing partition");
  for (const auto& entry : describe(Config{})) {
    const std::string key = entry.first;
    run_cmd->add_option_function<std::string>(
        "--" + kebab(key), [&settings, key](const std::string& v) { settings[key] = v; },
        "Config override (default " + entry.second + ")");
  }

  GenerateOptions gen;
  std::string kind = "gnp";
  double avg_degree = -1.0;
  auto* gen_cmd = app.add_subcommand("generate", "Write a generated instance");
  gen_cmd->add_option("kind", kind, "gnp, planted, hypercube or star-forest")->required();
  gen_cmd->add_option("-n,--nodes", gen.params.n, "Nodes (gnp) or extra filler nodes (planted)");
  gen_cmd->add_option("--p", gen.params.p, "Edge probability");
  gen_cmd->add_option("--avg-degree", avg_degree, "Sets p to avg-degree / n");
  gen_cmd->add_option("-k,--clique-size", gen.params.clique_size, "Clique size");
  gen_cmd->add_option("--cliques", gen.params.cliques, "Number of cliques");
  gen_cmd->add_option("--dimension", gen.params.dimension, "Hypercube dimension");
  gen_cmd->add_option("--stars", gen.params.stars, "Number of stars");
  gen_cmd->add_option("--leaves", gen.params.leaves, "Leaves per star");
  gen_cmd->add_option("-s,--seed", gen.params.seed, "Generator seed");
  gen_cmd->add_flag("--random-palettes", gen.params.random_palettes, "Draw palettes from [0, n^2)");
  gen_cmd->add_option("--extra-colors", gen.params.extra_colors, "Colors beyond d(v) + 1");
  gen_cmd->add_option("-o,--output", gen.graph_out, "Edge list file (stdout when omitted)");
  gen_cmd->add_option("--palettes-out", gen.palettes_out, "Palette file");

  std::string v_graph, v_palettes, v_coloring;
  auto* verify_cmd = app.add_subcommand("verify", "Check a coloring against an instance");
  verify_cmd->add_option("graph", v_graph, "Edge list file")->required();
  verify_cmd->add_option("coloring", v_coloring, "Coloring file")->required();
  verify_cmd->add_option("-p,--palettes", v_palettes, "Palette file");

  std::string report_path;
  auto* report_cmd = app.add_subcommand("report", "Summarize a run report");
  report_cmd->add_option("report", report_path, "Report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  if (*run_cmd) {
    run.settings.assign(settings.begin(), settings.end());
    return cmd_run(run, out, err);
  }
  if (*gen_cmd) {
    try {
      gen.params.kind = parse_graph_kind(kind);
    } catch (const Error& e) {
      return report_error(e, err);
    }
    if (avg_degree >= 0.0) gen.params.p = gen.params.n ? avg_degree / static_cast<double>(gen.params.n) : 0.0;
    return cmd_generate(gen, out, err);
  }
  if (*verify_cmd) return cmd_verify(v_graph, v_palettes, v_coloring, out, err);
  return cmd_report(report_path, out, err);
}

}  // namespace d1lc::cli
