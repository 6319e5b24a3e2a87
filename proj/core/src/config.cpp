#include "d1lc/config.hpp"

#include "d1lc/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace d1lc {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    auto v = std::stoull(value, &used);
    if (used != value.size() || value.front() == '-') throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::BadConfig, key + ": expected a nonnegative integer, got '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw Error(Errc::BadConfig, key + ": expected a boolean, got '" + value + "'");
}

Rational to_rational(const std::string& key, const std::string& value) {
  try {
    return parse_rational(value);
  } catch (const Error&) {
    throw Error(Errc::BadConfig, key + ": expected a rational, got '" + value + "'");
  }
}

std::optional<std::uint64_t> to_opt(const std::string& key, const std::string& value) {
  if (value == "auto" || value.empty()) return std::nullopt;
  return to_u64(key, value);
}

std::string opt_str(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : "auto"; }

using Setter = std::function<void(Config&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"mode",
       [](Config& c, const std::string& k, const std::string& v) {
         if (v == "randomized") {
           c.mode = Mode::Randomized;
         } else if (v == "derandomized") {
           c.mode = Mode::Derandomized;
         } else {
           throw Error(Errc::BadConfig, k + ": expected randomized or derandomized, got '" + v + "'");
         }
       }},
      {"entropy_seed", [](Config& c, auto& k, auto& v) { c.entropy_seed = to_u64(k, v); }},
      {"phi", [](Config& c, auto& k, auto& v) { c.phi = to_rational(k, v); }},
      {"delta", [](Config& c, auto& k, auto& v) { c.delta = to_rational(k, v); }},
      {"machine_count", [](Config& c, auto& k, auto& v) { c.machine_count = to_opt(k, v); }},
      {"sort_rounds", [](Config& c, auto& k, auto& v) { c.sort_rounds = static_cast<unsigned>(to_u64(k, v)); }},
      {"enforce_ball_space", [](Config& c, auto& k, auto& v) { c.enforce_ball_space = to_bool(k, v); }},
      {"eps_ac", [](Config& c, auto& k, auto& v) { c.eps_ac = to_rational(k, v); }},
      {"eps_sp", [](Config& c, auto& k, auto& v) { c.eps_sp = to_rational(k, v); }},
      {"eps_1", [](Config& c, auto& k, auto& v) { c.eps_1 = to_rational(k, v); }},
      {"eps_2", [](Config& c, auto& k, auto& v) { c.eps_2 = to_rational(k, v); }},
      {"eps_3", [](Config& c, auto& k, auto& v) { c.eps_3 = to_rational(k, v); }},
      {"eps_4", [](Config& c, auto& k, auto& v) { c.eps_4 = to_rational(k, v); }},
      {"eps_5", [](Config& c, auto& k, auto& v) { c.eps_5 = to_rational(k, v); }},
      {"heavy_threshold", [](Config& c, auto& k, auto& v) { c.heavy_threshold = to_rational(k, v); }},
      {"ell", [](Config& c, auto& k, auto& v) { c.ell = to_opt(k, v); }},
      {"kappa", [](Config& c, auto& k, auto& v) { c.kappa = to_rational(k, v); }},
      {"trc_rounds", [](Config& c, auto& k, auto& v) { c.trc_rounds = static_cast<unsigned>(to_u64(k, v)); }},
      {"rejection_tries",
       [](Config& c, auto& k, auto& v) { c.rejection_tries = static_cast<unsigned>(to_u64(k, v)); }},
      {"gamma", [](Config& c, auto& k, auto& v) { c.gamma = to_rational(k, v); }},
      {"c_p", [](Config& c, auto& k, auto& v) { c.c_p = to_rational(k, v); }},
      {"c_t", [](Config& c, auto& k, auto& v) { c.c_t = to_rational(k, v); }},
      {"low_degree_threshold", [](Config& c, auto& k, auto& v) { c.low_degree_threshold = to_opt(k, v); }},
      {"debug_checks", [](Config& c, auto& k, auto& v) { c.debug_checks = to_bool(k, v); }},
      {"source",
       [](Config& c, const std::string& k, const std::string& v) {
         if (v == "seeded") {
           c.source = SourceKind::SeededGenerator;
         } else if (v == "oracle") {
           c.source = SourceKind::TrueRandomOracle;
         } else {
           throw Error(Errc::BadConfig, k + ": expected seeded or oracle, got '" + v + "'");
         }
       }},
      {"max_seed_bits", [](Config& c, auto& k, auto& v) { c.max_seed_bits = static_cast<unsigned>(to_u64(k, v)); }},
      {"kwise", [](Config& c, auto& k, auto& v) { c.kwise = static_cast<unsigned>(to_u64(k, v)); }},
      {"radius", [](Config& c, auto& k, auto& v) { c.radius = static_cast<unsigned>(to_u64(k, v)); }},
      {"partition", [](Config& c, auto& k, auto& v) { c.partition = to_bool(k, v); }},
      {"seed_budget", [](Config& c, auto& k, auto& v) { c.seed_budget = to_u64(k, v); }},
      {"mid_degree_exponent",
       [](Config& c, auto& k, auto& v) { c.mid_degree_exponent = static_cast<unsigned>(to_u64(k, v)); }},
  };
  return table;
}

}  // namespace

void apply_setting(Config& cfg, const std::string& key, const std::string& value) {
  std::string k = trim(key);
  std::replace(k.begin(), k.end(), '-', '_');
  auto it = setters().find(k);
  if (it == setters().end()) throw Error(Errc::BadConfig, "unknown key '" + key + "'");
  it->second(cfg, k, trim(value));
}

Config parse_config(const std::string& text, Config base) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(Errc::BadConfig, "line " + std::to_string(lineno) + ": expected key = value");
    }
    apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
  }
  validate(base);
  return base;
}

Config load_config_file(const std::string& path, Config base) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::BadConfig, "cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::map<std::string, std::string> describe(const Config& c) {
  return {
      {"mode", mode_name(c.mode)},
      {"entropy_seed", std::to_string(c.entropy_seed)},
      {"phi", to_string(c.phi)},
      {"delta", to_string(c.delta)},
      {"machine_count", opt_str(c.machine_count)},
      {"sort_rounds", std::to_string(c.sort_rounds)},
      {"enforce_ball_space", c.enforce_ball_space ? "true" : "false"},
      {"eps_ac", to_string(c.eps_ac)},
      {"eps_sp", to_string(c.eps_sp)},
      {"eps_1", to_string(c.eps_1)},
      {"eps_2", to_string(c.eps_2)},
      {"eps_3", to_string(c.eps_3)},
      {"eps_4", to_string(c.eps_4)},
      {"eps_5", to_string(c.eps_5)},
      {"heavy_threshold", to_string(c.heavy_threshold)},
      {"ell", opt_str(c.ell)},
      {"kappa", to_string(c.kappa)},
      {"trc_rounds", std::to_string(c.trc_rounds)},
      {"rejection_tries", std::to_string(c.rejection_tries)},
      {"gamma", to_string(c.gamma)},
      {"c_p", to_string(c.c_p)},
      {"c_t", to_string(c.c_t)},
      {"low_degree_threshold", opt_str(c.low_degree_threshold)},
      {"debug_checks", c.debug_checks ? "true" : "false"},
      {"source", c.source == SourceKind::SeededGenerator ? "seeded" : "oracle"},
      {"max_seed_bits", std::to_string(c.max_seed_bits)},
      {"kwise", std::to_string(c.kwise)},
      {"radius", std::to_string(c.radius)},
      {"partition", c.partition ? "true" : "false"},
      {"seed_budget", std::to_string(c.seed_budget)},
      {"mid_degree_exponent", std::to_string(c.mid_degree_exponent)},
      {"generate_slack_probability", "1/16"},
  };
}

void validate(const Config& c) {
  auto open_unit = [](const Rational& q) { return q > 0 && q < 1; };
  if (!open_unit(c.phi)) throw Error(Errc::BadConfig, "phi must lie in (0,1)");
  if (!(c.delta > 0 && c.delta < c.phi)) throw Error(Errc::BadConfig, "delta must lie in (0, phi)");
  for (const Rational* e : {&c.eps_ac, &c.eps_sp, &c.eps_1, &c.eps_2, &c.eps_3, &c.eps_4, &c.eps_5}) {
    if (!open_unit(*e)) throw Error(Errc::BadConfig, "epsilon parameters must lie in (0,1)");
  }
  if (c.heavy_threshold <= 0) throw Error(Errc::BadConfig, "heavy_threshold must be positive");
  if (!(c.kappa > 0 && c.kappa <= 1)) throw Error(Errc::BadConfig, "kappa must lie in (0,1]");
  if (c.gamma < 0 || c.c_p < 0 || c.c_t < 0) throw Error(Errc::BadConfig, "gamma, c_p, c_t must be nonnegative");
  if (c.max_seed_bits > 20) throw Error(Errc::BadConfig, "max_seed_bits above 20 is not enumerable");
  if (c.kwise < 1) throw Error(Errc::BadConfig, "kwise must be at least 1");
  if (c.radius < 1) throw Error(Errc::BadConfig, "radius must be at least 1");
  if (c.mid_degree_exponent < 1) throw Error(Errc::BadConfig, "mid_degree_exponent must be at least 1");
  if (c.rejection_tries < 1) throw Error(Errc::BadConfig, "rejection_tries must be at least 1");
}

std::uint64_t low_degree_threshold(const Config& cfg, std::size_t n) {
  if (cfg.low_degree_threshold) return *cfg.low_degree_threshold;
  const double v = std::ceil(std::pow(std::log2(static_cast<double>(std::max<std::size_t>(n, 2))), 7.0));
  return v >= 1.8e19 ? ~std::uint64_t{0} : static_cast<std::uint64_t>(v);
}

std::uint64_t ell_for(const Config& cfg, std::size_t max_degree) {
  if (cfg.ell) return *cfg.ell;
  const double lg = std::log2(static_cast<double>(std::max<std::size_t>(max_degree, 2)));
  return static_cast<std::uint64_t>(std::ceil(std::pow(lg, 2.1)));
}

std::string mode_name(Mode m) { return m == Mode::Randomized ? "randomized" : "derandomized"; }

}  // namespace d1lc
