// Copyright (c) 2026 tcei authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tcei {

using Index = Eigen::Index;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VecX = Vec<double>;
using MatX = Mat<double>;

/// Thrown when an input violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an operation is called outside its legal lifecycle state.
class LifecycleError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Thrown when a file cannot be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tolerance for the sum-to-one check on normalized maps.
inline constexpr double kSimplexSumTol = 1e-9;
// Tolerance for the unit-norm check on features and embeddings.
inline constexpr double kUnitNormTol = 1e-6;

/// Fixed ID vocabulary. Index 0 is reserved for the newborn slot and the
/// size never changes over the lifetime of an engine instance.
struct IdVocab {
  Index size = 0;

  static constexpr Index kNewbornSlot = 0;
};

inline void validate_vocab(const IdVocab& vocab) {
  if (vocab.size < 2) throw ValidationError("IdVocab.size must be >= 2");
}

/// Score vector over the ID vocabulary. `normalized` distinguishes raw model
/// probabilities (simplex entries) from additive score maps, which are
/// unconstrained reals.
struct PredictionMap {
  VecX scores;
  bool normalized = true;

  Index size() const { return scores.size(); }
};

/// Checks the value invariants of a map for the requested mode: finite
/// entries always, simplex membership when `expect_normalized`. When
/// `expect_size` is nonnegative the length is checked as well.
inline void validate_map(const PredictionMap& p, bool expect_normalized,
                         Index expect_size = -1) {
  if (expect_size >= 0 && p.size() != expect_size) {
    throw ValidationError("PredictionMap has length " + std::to_string(p.size()) +
                          ", expected " + std::to_string(expect_size));
  }
  if (!p.scores.allFinite()) throw ValidationError("PredictionMap has NaN/Inf entries");
  if (expect_normalized) {
    if (p.size() > 0 && (p.scores.minCoeff() < 0.0 || p.scores.maxCoeff() > 1.0)) {
      throw ValidationError("normalized PredictionMap has entries outside [0,1]");
    }
    if (std::abs(p.scores.sum() - 1.0) > kSimplexSumTol) {
      throw ValidationError("normalized PredictionMap does not sum to 1");
    }
  }
}

/// Unit-length object feature.
struct FeatureVec {
  VecX values;

  Index dim() const { return values.size(); }

  static FeatureVec normalized(VecX v) {
    const double n = v.norm();
    if (!std::isfinite(n) || n <= 0.0) {
      throw ValidationError("cannot normalize a zero or non-finite feature vector");
    }
    return FeatureVec{std::move(v /= n)};
  }
};

/// Unit-length experience embedding. Shares the feature dimension D.
struct ExperienceEmbed {
  VecX values;

  Index dim() const { return values.size(); }

  static ExperienceEmbed normalized(VecX v) {
    const double n = v.norm();
    if (!std::isfinite(n) || n <= 0.0) {
      throw ValidationError("cannot normalize a zero or non-finite embedding");
    }
    return ExperienceEmbed{std::move(v /= n)};
  }
};

/// Entropy of a normalized map, scaled by ln(vocab size) so the result lies
/// in [0,1] regardless of vocabulary size. 0*ln(0) is taken as 0.
template <typename Derived>
double normalized_entropy(const Eigen::MatrixBase<Derived>& p) {
  const Index n = p.size();
  if (n < 2) throw ValidationError("entropy needs a vocabulary of size >= 2");
  validate_map(PredictionMap{p.eval(), true}, /*expect_normalized=*/true);
  double h = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double v = p(i);
    if (v > 0.0) h -= v * std::log(v);
  }
  return h / std::log(static_cast<double>(n));
}

inline double normalized_entropy(const PredictionMap& p) {
  return normalized_entropy(p.scores);
}

/// Elementwise uncertainty p*(1-p) of a normalized map. Entries lie in
/// [0, 0.25] with zeros exactly at one-hot coordinates.
template <typename Derived>
VecX uncertainty(const Eigen::MatrixBase<Derived>& p) {
  validate_map(PredictionMap{p.eval(), true}, /*expect_normalized=*/true);
  return (p.array() * (1.0 - p.array())).matrix();
}

inline VecX uncertainty(const PredictionMap& p) { return uncertainty(p.scores); }

/// One observed object: feature, experience embedding, raw prediction map and
/// its entropy. Stamps define a deterministic recency order for cache
/// tie-breaking.
struct ObjectRecord {
  FeatureVec feature;
  ExperienceEmbed embed;
  PredictionMap raw_map;  // normalized
  double entropy = 0.0;   // normalized_entropy(raw_map)
  std::int64_t frame_stamp = 0;
  std::int32_t video_stamp = 0;
  std::int32_t object_index = 0;  // position within the frame
};

inline ObjectRecord make_record(FeatureVec feature, ExperienceEmbed embed,
                                PredictionMap raw_map, std::int64_t frame_stamp,
                                std::int32_t video_stamp, std::int32_t object_index) {
  const double h = normalized_entropy(raw_map);
  return ObjectRecord{std::move(feature), std::move(embed), std::move(raw_map),
                      h,     frame_stamp,  video_stamp,
                      object_index};
}

}  // namespace tcei
