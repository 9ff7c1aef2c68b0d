// Copyright (c) 2026 tcei authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcei/engine.hpp"
#include "tcei/simbench.hpp"

namespace tcei {

/// Axes of the capacity/threshold sweep; cells are visited in lexicographic
/// (k_c, k_u, tau, e_u) order.
struct SweepGrid {
  std::vector<int> k_c{1, 2, 3, 4, 8, 16};
  std::vector<int> k_u{1, 2, 3, 4, 8, 16};
  std::vector<double> tau{0.03};
  std::vector<double> e_u{0.2};
};

void validate_sweep(const SweepGrid& grid);

/// Everything a command needs: engine defaults, the scenario, the seed set
/// the benchmark commands average over, the sweep grid and the strategy name.
struct AppConfig {
  EngineConfig engine;
  Scenario scenario;
  std::vector<std::uint64_t> seeds;
  SweepGrid sweep;
  std::string strategy = "tcei";
};

/// The bundled reference benchmark: 3 videos x 200 frames x 8 objects at
/// D = 32 under linear drift 0.02, noise 0.05, occlusion 0.1, seeds 1..20.
AppConfig default_config();

/// Applies a parsed TOML document on top of default_config(). Sections are
/// [engine], [scenario], [run] and [sweep]; unknown keys are rejected by name.
AppConfig load_config_text(std::string_view text);

/// As load_config_text, reading from disk. Unreadable file raises IoError.
AppConfig load_config_file(const std::string& path);

/// Command-line values; each one set here beats the config file.
struct CliOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> calibration;
  std::optional<int> k_c;
  std::optional<int> k_u;
  std::optional<double> tau;
  std::optional<double> e_u;
  std::optional<double> drift_rate;
};

/// Flag > file > default. --seed pins both the scenario seed and the
/// benchmark seed set, so every command becomes single-seed deterministic.
void apply_overrides(AppConfig& config, const CliOverrides& overrides);

}  // namespace tcei
