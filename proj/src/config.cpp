// Copyright (c) 2026 tcei authors
// SPDX-License-Identifier: Apache-2.0
#include "tcei/config.hpp"

#include <functional>
#include <limits>
#include <map>
#include <numeric>

#include "tcei/calibrate.hpp"
#include "tcei/toml.hpp"

namespace tcei {

void validate_sweep(const SweepGrid& grid) {
  if (grid.k_c.empty() || grid.k_u.empty() || grid.tau.empty() || grid.e_u.empty()) {
    throw ValidationError("every sweep axis needs at least one point");
  }
  for (int k : grid.k_c) {
    if (k < 1) throw ValidationError("sweep k_c values must be >= 1");
  }
  for (int k : grid.k_u) {
    if (k < 1) throw ValidationError("sweep k_u values must be >= 1");
  }
}

AppConfig default_config() {
  AppConfig config;
  config.seeds.resize(20);
  std::iota(config.seeds.begin(), config.seeds.end(), std::uint64_t{1});
  return config;
}

namespace {

int to_positive_int(const toml::Value& value, const std::string& key) {
  const std::int64_t raw = value.as_int();
  if (raw < 1 || raw > std::numeric_limits<int>::max()) {
    throw ValidationError(key + " must be a positive 32-bit integer");
  }
  return static_cast<int>(raw);
}

std::uint64_t to_seed(std::int64_t raw, const std::string& key) {
  if (raw < 0) throw ValidationError(key + " must be non-negative");
  return static_cast<std::uint64_t>(raw);
}

AppConfig from_document(const toml::Document& doc) {
  AppConfig config = default_config();
  using Handler = std::function<void(const toml::Value&)>;
  const std::map<std::string, Handler> handlers = {
      {"engine.k_c", [&](const auto& v) { config.engine.k_c = to_positive_int(v, "engine.k_c"); }},
      {"engine.k_u", [&](const auto& v) { config.engine.k_u = to_positive_int(v, "engine.k_u"); }},
      {"engine.m_c", [&](const auto& v) { config.engine.m_c = to_positive_int(v, "engine.m_c"); }},
      {"engine.m_u", [&](const auto& v) { config.engine.m_u = to_positive_int(v, "engine.m_u"); }},
      {"engine.e_u", [&](const auto& v) { config.engine.e_u = v.as_double(); }},
      {"engine.tau", [&](const auto& v) { config.engine.tau = v.as_double(); }},
      {"engine.ema_momentum", [&](const auto& v) { config.engine.ema_momentum = v.as_double(); }},
      {"scenario.num_videos",
       [&](const auto& v) { config.scenario.num_videos = to_positive_int(v, "scenario.num_videos"); }},
      {"scenario.frames_per_video",
       [&](const auto& v) {
         config.scenario.frames_per_video = to_positive_int(v, "scenario.frames_per_video");
       }},
      {"scenario.objects_per_video",
       [&](const auto& v) {
         config.scenario.objects_per_video = to_positive_int(v, "scenario.objects_per_video");
       }},
      {"scenario.feature_dim",
       [&](const auto& v) { config.scenario.feature_dim = to_positive_int(v, "scenario.feature_dim"); }},
      {"scenario.drift_kind",
       [&](const auto& v) { config.scenario.drift_kind = parse_drift(v.as_string()); }},
      {"scenario.drift_rate", [&](const auto& v) { config.scenario.drift_rate = v.as_double(); }},
      {"scenario.noise_sigma", [&](const auto& v) { config.scenario.noise_sigma = v.as_double(); }},
      {"scenario.occlusion_prob",
       [&](const auto& v) { config.scenario.occlusion_prob = v.as_double(); }},
      {"scenario.seed",
       [&](const auto& v) { config.scenario.seed = to_seed(v.as_int(), "scenario.seed"); }},
      {"scenario.temperature", [&](const auto& v) { config.scenario.temperature = v.as_double(); }},
      {"scenario.newborn_bias",
       [&](const auto& v) { config.scenario.newborn_bias = v.as_double(); }},
      {"run.strategy",
       [&](const auto& v) {
         parse_strategy(v.as_string());  // name check only
         config.strategy = v.as_string();
       }},
      {"run.seeds",
       [&](const auto& v) {
         config.seeds.clear();
         for (std::int64_t s : v.as_int_array()) config.seeds.push_back(to_seed(s, "run.seeds"));
       }},
      {"sweep.k_c",
       [&](const auto& v) {
         config.sweep.k_c.clear();
         for (const auto& item : v.as_array()) {
           config.sweep.k_c.push_back(to_positive_int(item, "sweep.k_c"));
         }
       }},
      {"sweep.k_u",
       [&](const auto& v) {
         config.sweep.k_u.clear();
         for (const auto& item : v.as_array()) {
           config.sweep.k_u.push_back(to_positive_int(item, "sweep.k_u"));
         }
       }},
      {"sweep.tau", [&](const auto& v) { config.sweep.tau = v.as_double_array(); }},
      {"sweep.e_u", [&](const auto& v) { config.sweep.e_u = v.as_double_array(); }},
  };

  for (const auto& [key, value] : doc.values) {
    const auto it = handlers.find(key);
    if (it == handlers.end()) throw ValidationError("unknown config key: " + key);
    it->second(value);
  }

  validate_scenario(config.scenario);
  validate_sweep(config.sweep);
  if (config.seeds.empty()) throw ValidationError("run.seeds must not be empty");
  return config;
}

}  // namespace

AppConfig load_config_text(std::string_view text) { return from_document(toml::parse(text)); }

AppConfig load_config_file(const std::string& path) {
  return from_document(toml::parse_file(path));
}

void apply_overrides(AppConfig& config, const CliOverrides& overrides) {
  if (overrides.seed) {
    config.scenario.seed = *overrides.seed;
    config.seeds = {*overrides.seed};
  }
  if (overrides.calibration) {
    parse_strategy(*overrides.calibration);  // name check only
    config.strategy = *overrides.calibration;
  }
  if (overrides.k_c) config.engine.k_c = *overrides.k_c;
  if (overrides.k_u) config.engine.k_u = *overrides.k_u;
  if (overrides.tau) config.engine.tau = *overrides.tau;
  if (overrides.e_u) config.engine.e_u = *overrides.e_u;
  if (overrides.drift_rate) config.scenario.drift_rate = *overrides.drift_rate;
  validate_scenario(config.scenario);
}

}  // namespace tcei
