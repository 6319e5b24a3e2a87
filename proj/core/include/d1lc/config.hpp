#pragma once

#include "d1lc/prg.hpp"
#include "d1lc/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace d1lc {

enum class Mode { Randomized, Derandomized };

struct Config {
  Mode mode = Mode::Derandomized;
  std::uint64_t entropy_seed = 1;

  // MPC substrate.
  Rational phi = make_rational(9, 10);
  Rational delta = make_rational(1, 16);
  std::optional<std::uint64_t> machine_count;  // auto when unset
  unsigned sort_rounds = 3;
  bool enforce_ball_space = false;

  // Almost-clique decomposition.
  Rational eps_ac = make_rational(1, 3);
  Rational eps_sp = make_rational(1, 3);
  Rational eps_1 = make_rational(1, 100);
  Rational eps_2 = make_rational(1, 100);
  Rational eps_3 = make_rational(1, 100);
  Rational eps_4 = make_rational(1, 100);
  Rational eps_5 = make_rational(1, 100);
  Rational heavy_threshold = 1;
  std::optional<std::uint64_t> ell;  // ceil(log2(max(Delta,2))^2.1) when unset

  // Local procedures and success properties.
  Rational kappa = 1;
  unsigned trc_rounds = 2;
  unsigned rejection_tries = 8;
  Rational gamma = make_rational(1, 128);
  Rational c_p = make_rational(1, 4);
  Rational c_t = 4;
  std::optional<std::uint64_t> low_degree_threshold;  // ceil(log2(n)^7) when unset
  bool debug_checks = false;

  // Derandomization.
  SourceKind source = SourceKind::SeededGenerator;
  unsigned max_seed_bits = 8;
  unsigned kwise = 8;
  unsigned radius = 2;

  // Degree reduction.
  bool partition = true;
  std::uint64_t seed_budget = 4096;
  unsigned mid_degree_exponent = 7;
};

/// Applies one "key = value" setting; keys use snake_case or kebab-case.
void apply_setting(Config& cfg, const std::string& key, const std::string& value);
/// Parses a flat "key = value" document ('#' starts a comment).
Config parse_config(const std::string& text, Config base = {});
Config load_config_file(const std::string& path, Config base = {});
/// Every key with its effective value, in a stable order.
std::map<std::string, std::string> describe(const Config& cfg);
/// Throws BadConfig when a parameter is outside its range.
void validate(const Config& cfg);

std::uint64_t low_degree_threshold(const Config& cfg, std::size_t n);
std::uint64_t ell_for(const Config& cfg, std::size_t max_degree);
std::string mode_name(Mode m);

}  // namespace d1lc
