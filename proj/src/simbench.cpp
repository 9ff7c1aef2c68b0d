// Copyright (c) 2026 tcei authors
// SPDX-License-Identifier: Apache-2.0
#include "tcei/simbench.hpp"

#include <bit>
#include <cmath>
#include <random>

namespace tcei {
namespace {

// Seeded draws use fixed bit-level constructions instead of the standard
// distributions, whose outputs are implementation-defined; streams stay
// byte-identical across standard libraries.
double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double gauss(std::mt19937_64& rng) {
  const double u1 = std::max(u01(rng), 0x1.0p-53);  // keep log() finite
  const double u2 = u01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

VecX random_unit_vec(std::mt19937_64& rng, Index dim) {
  VecX v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = gauss(rng);
  return FeatureVec::normalized(std::move(v)).values;
}

double drift_magnitude(const Scenario& s, std::int64_t t) {
  const double T = static_cast<double>(s.frames_per_video);
  switch (s.drift_kind) {
    case DriftKind::kNone: return 0.0;
    case DriftKind::kLinear: return s.drift_rate * static_cast<double>(t);
    case DriftKind::kStep:
      return static_cast<double>(t) < T / 2.0 ? 0.0 : s.drift_rate * (T / 2.0);
    case DriftKind::kOscillating:
      return s.drift_rate * (T / 4.0) * std::sin(2.0 * M_PI * static_cast<double>(t) / T);
  }
  throw ValidationError("invalid drift kind value");
}

void append_hex(std::string& out, std::uint64_t bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  for (int shift = 60; shift >= 0; shift -= 4) {
    out.push_back(kDigits[(bits >> shift) & 0xF]);
  }
}

void append_hex(std::string& out, double value) {
  append_hex(out, std::bit_cast<std::uint64_t>(value));
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

DriftKind parse_drift(std::string_view name) {
  if (name == "none") return DriftKind::kNone;
  if (name == "linear") return DriftKind::kLinear;
  if (name == "step") return DriftKind::kStep;
  if (name == "oscillating") return DriftKind::kOscillating;
  throw ValidationError("unknown drift kind: " + std::string(name));
}

std::string_view to_string(DriftKind kind) {
  switch (kind) {
    case DriftKind::kNone: return "none";
    case DriftKind::kLinear: return "linear";
    case DriftKind::kStep: return "step";
    case DriftKind::kOscillating: return "oscillating";
  }
  throw ValidationError("invalid drift kind value");
}

void validate_scenario(const Scenario& s) {
  if (s.num_videos < 1 || s.frames_per_video < 1 || s.objects_per_video < 1) {
    throw ValidationError("scenario counts must be positive");
  }
  if (s.feature_dim < 1) throw ValidationError("feature_dim must be >= 1");
  if (s.drift_rate < 0.0) throw ValidationError("drift_rate must be >= 0");
  if (s.noise_sigma < 0.0) throw ValidationError("noise_sigma must be >= 0");
  if (s.occlusion_prob < 0.0 || s.occlusion_prob >= 1.0) {
    throw ValidationError("occlusion_prob must lie in [0,1)");
  }
  if (s.temperature <= 0.0) throw ValidationError("temperature must be positive");
}

IdVocab scenario_vocab(const Scenario& s) {
  return IdVocab{static_cast<Index>(s.objects_per_video) + 1};
}

std::uint64_t scenario_hash(const Scenario& s) {
  std::string repr;
  repr += std::to_string(s.num_videos) + "|" + std::to_string(s.frames_per_video) + "|" +
          std::to_string(s.objects_per_video) + "|" + std::to_string(s.feature_dim) + "|";
  repr += std::string(to_string(s.drift_kind)) + "|";
  append_hex(repr, s.drift_rate);
  append_hex(repr, s.noise_sigma);
  append_hex(repr, s.occlusion_prob);
  append_hex(repr, s.seed);
  append_hex(repr, s.temperature);
  append_hex(repr, s.newborn_bias);
  return fnv1a(repr);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Reserved latent stream; video streams use their index, which cannot reach
// this value because video counts are 32-bit.
constexpr std::uint64_t kLatentStream = 0xffffffff00000000ULL;

VideoStream generate_video(const Scenario& s, std::int32_t video_index) {
  validate_scenario(s);

  VideoStream out;
  // Latents depend on the scenario seed only: the same identities appear in
  // every video, so experience collected on one video is meaningful on the
  // next. Drift, noise and occlusion stay per-video.
  std::mt19937_64 latent_rng(mix_seed(s.seed, kLatentStream));
  out.latents.reserve(static_cast<std::size_t>(s.objects_per_video));
  for (int i = 0; i < s.objects_per_video; ++i) {
    out.latents.push_back(FeatureVec{random_unit_vec(latent_rng, s.feature_dim)});
  }

  std::mt19937_64 rng(mix_seed(s.seed, static_cast<std::uint64_t>(video_index)));
  // One drift direction per video: the shift is a property of the stream
  // (domain change), not of individual trajectories.
  const VecX direction = random_unit_vec(rng, s.feature_dim);

  out.frames.resize(static_cast<std::size_t>(s.frames_per_video));
  for (std::int64_t t = 0; t < s.frames_per_video; ++t) {
    const double mag = drift_magnitude(s, t);
    auto& frame = out.frames[static_cast<std::size_t>(t)];
    for (std::int32_t traj = 0; traj < s.objects_per_video; ++traj) {
      const bool present = u01(rng) >= s.occlusion_prob;
      if (!present) continue;
      const FeatureVec& latent = out.latents[static_cast<std::size_t>(traj)];
      if (mag == 0.0 && s.noise_sigma == 0.0) {
        frame.push_back(SimObservation{latent, traj});  // bit-exact static case
        continue;
      }
      VecX v = latent.values + mag * direction;
      if (s.noise_sigma > 0.0) {
        for (Index k = 0; k < s.feature_dim; ++k) v(k) += s.noise_sigma * gauss(rng);
      }
      frame.push_back(SimObservation{FeatureVec::normalized(std::move(v)), traj});
    }
  }
  return out;
}

FrozenPredictor::FrozenPredictor(IdVocab vocab, double temperature, double newborn_bias)
    : vocab_(vocab), temperature_(temperature), newborn_bias_(newborn_bias) {
  validate_vocab(vocab_);
  if (temperature_ <= 0.0) throw ValidationError("temperature must be positive");
}

void FrozenPredictor::enroll(Index id, FeatureVec prototype) {
  if (id <= IdVocab::kNewbornSlot || id >= vocab_.size) {
    throw ValidationError("enrollment ID must be a non-newborn vocabulary slot");
  }
  if (prototypes_.contains(id)) throw ValidationError("ID already enrolled");
  if (!prototypes_.empty() && prototypes_.begin()->second.dim() != prototype.dim()) {
    throw ValidationError("prototype dimensions differ");
  }
  prototypes_.emplace(id, std::move(prototype));
}

PredictionMap FrozenPredictor::predict(const FeatureVec& feature) const {
  if (prototypes_.empty()) throw LifecycleError("predict called on an unenrolled predictor");
  if (feature.dim() != prototypes_.begin()->second.dim()) {
    throw ValidationError("feature dimension does not match prototypes");
  }
  // Softmax over the participating slots (newborn + enrolled) only.
  std::vector<std::pair<Index, double>> logits;
  logits.reserve(prototypes_.size() + 1);
  logits.emplace_back(IdVocab::kNewbornSlot, newborn_bias_);
  for (const auto& [id, proto] : prototypes_) {
    logits.emplace_back(id, proto.values.dot(feature.values) / temperature_);
  }
  double max_logit = logits.front().second;
  for (const auto& [id, l] : logits) max_logit = std::max(max_logit, l);
  double sum = 0.0;
  for (auto& [id, l] : logits) {
    l = std::exp(l - max_logit);
    sum += l;
  }
  VecX scores = VecX::Zero(vocab_.size);
  for (const auto& [id, e] : logits) scores(id) = e / sum;
  return PredictionMap{std::move(scores), true};
}

std::string FrozenPredictor::serialize() const {
  std::string out;
  append_hex(out, temperature_);
  append_hex(out, newborn_bias_);
  append_hex(out, static_cast<std::uint64_t>(vocab_.size));
  for (const auto& [id, proto] : prototypes_) {
    append_hex(out, static_cast<std::uint64_t>(id));
    append_hex(out, static_cast<std::uint64_t>(proto.dim()));
    for (Index k = 0; k < proto.dim(); ++k) append_hex(out, proto.values(k));
  }
  return out;
}

FrozenPredictor enrolled_predictor(const Scenario& scenario, const VideoStream& stream) {
  FrozenPredictor predictor(scenario_vocab(scenario), scenario.temperature,
                            scenario.newborn_bias);
  for (std::size_t traj = 0; traj < stream.latents.size(); ++traj) {
    predictor.enroll(static_cast<Index>(traj) + 1, stream.latents[traj]);
  }
  return predictor;
}

ScenarioRun run_scenario(const Scenario& scenario, EngineConfig config,
                         const RunStrategy& strategy) {
  validate_scenario(scenario);
  config.vocab = scenario_vocab(scenario);
  config.feature_dim = scenario.feature_dim;
  Engine engine(config, strategy);

  ScenarioRun out;
  out.scenario_hash = scenario_hash(scenario);
  for (std::int32_t v = 0; v < scenario.num_videos; ++v) {
    const VideoStream stream = generate_video(scenario, v);
    const FrozenPredictor predictor = enrolled_predictor(scenario, stream);
    engine.begin_video();
    for (std::int64_t t = 0; t < scenario.frames_per_video; ++t) {
      const auto& sim_frame = stream.frames[static_cast<std::size_t>(t)];
      std::vector<Observation> observations;
      observations.reserve(sim_frame.size());
      for (const SimObservation& so : sim_frame) {
        observations.push_back(Observation{so.feature, predictor.predict(so.feature)});
      }
      const FrameResult fr = engine.process_frame(observations);
      for (std::size_t i = 0; i < sim_frame.size(); ++i) {
        out.records.push_back(RunRecord{v, t, static_cast<std::int32_t>(i),
                                        sim_frame[i].gt_slot, fr.objects[i].assigned_id,
                                        fr.objects[i].entropy, fr.objects[i].diag.activation});
      }
    }
  }
  return out;
}

}  // namespace tcei
