// Copyright (c) 2026 tcei authors
// SPDX-License-Identifier: Apache-2.0
#include "tcei/engine.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace tcei {

void validate_engine_config(const EngineConfig& config) {
  if (config.k_c < 1 || config.k_u < 1 || config.m_c < 1 || config.m_u < 1) {
    throw ValidationError("cache capacities must be >= 1");
  }
  if (config.e_u < 0.0 || config.e_u > 1.0) throw ValidationError("e_u must lie in [0,1]");
  validate_guidance_config(GuidanceConfig{config.tau});
  if (config.ema_momentum < 0.0 || config.ema_momentum >= 1.0) {
    throw ValidationError("ema_momentum must lie in [0,1)");
  }
  validate_vocab(config.vocab);
  if (config.feature_dim < 1) throw ValidationError("feature_dim must be >= 1");
}

Engine::Engine(EngineConfig config, RunStrategy strategy)
    : config_(config),
      strategy_(strategy),
      transient_confident_(
          CacheConfig{config.k_c, 0.0, {CacheRole::kConfident, CacheScope::kTransient}}),
      transient_uncertain_(
          CacheConfig{config.k_u, config.e_u, {CacheRole::kUncertain, CacheScope::kTransient}}),
      experience_confident_(
          CacheConfig{config.m_c, 0.0, {CacheRole::kConfident, CacheScope::kExperience}}),
      experience_uncertain_(
          CacheConfig{config.m_u, config.e_u, {CacheRole::kUncertain, CacheScope::kExperience}}) {
  validate_engine_config(config_);
}

void Engine::begin_video() {
  transient_confident_.reset();
  transient_uncertain_.reset();
  embed_tracker_.clear();
  ++video_counter_;
  video_open_ = true;
}

ExperienceEmbed Engine::peek_embed(Index slot, const FeatureVec& feature) const {
  const auto it = embed_tracker_.find(slot);
  if (it == embed_tracker_.end()) return ExperienceEmbed{feature.values};
  const double beta = config_.ema_momentum;
  return ExperienceEmbed::normalized(beta * it->second.values +
                                     (1.0 - beta) * feature.values);
}

ExperienceEmbed Engine::update_embed(Index slot, const FeatureVec& feature) {
  ExperienceEmbed embed = peek_embed(slot, feature);
  embed_tracker_.insert_or_assign(slot, embed);
  return embed;
}

CacheExport Engine::masked_export(const RankedCache& confident,
                                  const RankedCache& uncertain) const {
  const CacheExport none{MatX(0, 0), {}, {}};
  return merge_exports(strategy_.use_confident ? confident.export_kv() : none,
                       strategy_.use_uncertain ? uncertain.export_kv() : none);
}

std::vector<Index> Engine::assign_ids(const std::vector<PredictionMap>& score_maps,
                                      Index newborn_index) {
  const Index n = static_cast<Index>(score_maps.size());
  std::vector<Index> out(static_cast<std::size_t>(n), newborn_index);
  if (n == 0) return out;
  const Index vocab = score_maps.front().size();
  for (const PredictionMap& m : score_maps) {
    if (m.size() != vocab) throw ValidationError("score maps differ in length");
  }
  if (newborn_index < 0 || newborn_index >= vocab) {
    throw ValidationError("newborn index outside the vocabulary");
  }

  std::vector<bool> object_done(static_cast<std::size_t>(n), false);
  std::vector<bool> id_taken(static_cast<std::size_t>(vocab), false);
  for (Index step = 0; step < n; ++step) {
    double best = -std::numeric_limits<double>::infinity();
    Index best_obj = -1, best_id = -1;
    for (Index o = 0; o < n; ++o) {
      if (object_done[static_cast<std::size_t>(o)]) continue;
      const VecX& s = score_maps[static_cast<std::size_t>(o)].scores;
      for (Index i = 0; i < vocab; ++i) {
        if (i == newborn_index || id_taken[static_cast<std::size_t>(i)]) continue;
        if (s(i) > best) {
          best = s(i);
          best_obj = o;
          best_id = i;
        }
      }
    }
    if (best_obj < 0) break;  // non-newborn ids exhausted; the rest stay newborn
    object_done[static_cast<std::size_t>(best_obj)] = true;
    const double newborn_score =
        score_maps[static_cast<std::size_t>(best_obj)].scores(newborn_index);
    if (best < newborn_score) continue;  // keeps the newborn assignment
    out[static_cast<std::size_t>(best_obj)] = best_id;
    id_taken[static_cast<std::size_t>(best_id)] = true;
  }
  return out;
}

FrameResult Engine::process_frame(std::span<const Observation> observations) {
  const auto start = std::chrono::steady_clock::now();
  if (!video_open_) throw LifecycleError("process_frame called before begin_video");

  const Index n = static_cast<Index>(observations.size());
  const Index vocab = config_.vocab.size;
  const Index dim = config_.feature_dim;
  for (const Observation& obs : observations) {
    validate_map(obs.raw_map, /*expect_normalized=*/true, vocab);
    if (obs.feature.dim() != dim) {
      throw ValidationError("observation feature dimension does not match the engine");
    }
    if (std::abs(obs.feature.values.norm() - 1.0) > kUnitNormTol) {
      throw ValidationError("observation feature is not unit length");
    }
  }

  // Queries: features for the transient system, EMA embeddings (peeked at
  // the raw-argmax slot, committed under the final id below) for the
  // experiential system.
  MatX feature_q(n, dim), embed_q(n, dim);
  std::vector<ExperienceEmbed> embeds;
  embeds.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const Observation& obs = observations[static_cast<std::size_t>(i)];
    feature_q.row(i) = obs.feature.values.transpose();
    Index provisional = 0;
    obs.raw_map.scores.maxCoeff(&provisional);
    embeds.push_back(peek_embed(provisional, obs.feature));
    embed_q.row(i) = embeds.back().values.transpose();
  }

  MatX p_tm = MatX::Zero(n, vocab), attn_tm(n, 0);
  if (strategy_.use_intuitive) {
    const CacheExport kv = masked_export(transient_confident_, transient_uncertain_);
    const auto cues = cues_from_export(kv, config_.tau, IdVocab::kNewbornSlot);
    std::tie(p_tm, attn_tm) = attend_weighted(feature_q, kv.keys, cues, vocab);
  }
  MatX p_ec = MatX::Zero(n, vocab), attn_ec(n, 0);
  if (strategy_.use_experiential) {
    const CacheExport kv = masked_export(experience_confident_, experience_uncertain_);
    const auto cues = cues_from_export(kv, config_.tau, IdVocab::kNewbornSlot);
    std::tie(p_ec, attn_ec) = attend_weighted(embed_q, kv.keys, cues, vocab);
  }

  FrameResult result;
  result.objects.reserve(static_cast<std::size_t>(n));
  std::vector<PredictionMap> finals;
  finals.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const Observation& obs = observations[static_cast<std::size_t>(i)];
    StrategyResult sr = apply_strategy(strategy_.strategy, obs.raw_map,
                                       p_tm.row(i).transpose(), p_ec.row(i).transpose());
    ObjectResult obj;
    obj.entropy = normalized_entropy(obs.raw_map);
    obj.p_final = sr.p_final;
    obj.diag = std::move(sr.diag);
    obj.raw = obs.raw_map.scores;
    obj.p_tm = p_tm.row(i).transpose();
    obj.p_in = sr.p_in.scores;
    obj.p_ec = p_ec.row(i).transpose();
    obj.attn_tm = attn_tm.row(i).transpose();
    obj.attn_ec = attn_ec.row(i).transpose();
    finals.push_back(std::move(sr.p_final));
    result.objects.push_back(std::move(obj));
  }

  const std::vector<Index> ids = assign_ids(finals, IdVocab::kNewbornSlot);
  std::vector<ObjectRecord> records;
  records.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const Observation& obs = observations[static_cast<std::size_t>(i)];
    const Index id = ids[static_cast<std::size_t>(i)];
    result.objects[static_cast<std::size_t>(i)].assigned_id = id;
    if (id != IdVocab::kNewbornSlot) {
      embed_tracker_.insert_or_assign(id, embeds[static_cast<std::size_t>(i)]);
    }
    records.push_back(make_record(obs.feature, embeds[static_cast<std::size_t>(i)], obs.raw_map,
                                  frame_counter_, video_counter_, static_cast<std::int32_t>(i)));
  }

  // Caches always ingest the raw maps, independent of the strategy switches.
  transient_confident_.update(records);
  transient_uncertain_.update(records);
  experience_confident_.update(records);
  experience_uncertain_.update(records);

  result.frame_index = frame_counter_++;
  result.video_index = video_counter_;
  result.cache_sizes = {transient_confident_.size(), transient_uncertain_.size(),
                        experience_confident_.size(), experience_uncertain_.size()};
  result.elapsed_us = std::chrono::duration<double, std::micro>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return result;
}

}  // namespace tcei
