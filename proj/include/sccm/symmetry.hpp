#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sccm/crossmap.hpp"
#include "sccm/diagnostics.hpp"
#include "sccm/embedding.hpp"

namespace sccm {

// Inversion symmetry ---------------------------------------------------------------

struct SymmetryOptions {
  double threshold = 0.08;
  Index max_samples = 2000;
  std::uint64_t seed = 0;
};

struct SymmetryReport {
  double score = 0.0;  // 0 means every reflected point lands on the manifold
  double threshold = 0.08;
  bool is_symmetric = false;
  Vector center;
};

/// Mean distance from 2c - p to the nearest manifold point over a seeded
/// subsample of p, divided by the RMS radius about the mean c.
SymmetryReport inversion_symmetry_score(const ShadowManifold& manifold, const SymmetryOptions& options = {});

// Two-means segmentation -----------------------------------------------------------

struct SegmentLabels {
  std::vector<int> labels;  // 1 or 2 per manifold row
  Matrix centroids;         // row k-1 is the centroid of label k
  int iterations = 0;
  bool converged = false;

  /// Manifold rows carrying `label`, in time order.
  std::vector<Index> rows(int label) const;
  Index count(int label) const;
};

/// Lloyd iterations with k = 2. The first centroid is the point farthest
/// from the mean and the second is its reflection through the mean, so the
/// result is fully determined by the data; `seed` is accepted for interface
/// symmetry with the other randomized steps and does not change the output.
SegmentLabels kmeans2(const ShadowManifold& manifold, std::uint64_t seed = 0, int max_iter = 100);

// Segment CCM ----------------------------------------------------------------------

enum class Method { ccm, sccm };
std::string_view to_string(Method m);

struct SegmentCcmConfig {
  SweepOptions sweep;
  VerdictRule rule;
  SymmetryOptions symmetry;
  RecurrenceOptions recurrence;
  bool check_recurrence = true;
  int kmeans_max_iter = 100;
  std::uint64_t seed = 0;
  std::string name_a = "X";
  std::string name_b = "Y";
};

struct SegmentResult {
  Index size = 0;
  SweepResult sweep;
};

/// Outcome of segment CCM between series a and b. The
/// "ab" skill is a estimated from M_b (evidence for a => b). Segments are
/// listed in order of their earliest time index.
struct CausalReport {
  Method method = Method::ccm;
  std::string name_a, name_b;
  EmbeddingParams params_a, params_b;
  SymmetryReport symmetry_a, symmetry_b;
  std::optional<RecurrenceResult> recurrence_a, recurrence_b;
  /// 0 when M_a was segmented, 1 when M_b was; empty for plain CCM.
  std::optional<int> segmented_manifold;
  std::vector<SegmentResult> segments;
  /// For sccm: position-wise mean of the segment curves, with L the summed
  /// segment library sizes.
  SweepResult combined;
  double rho_ab = 0.0;
  double rho_ba = 0.0;
  CausalVerdict verdict;
  std::vector<std::string> warnings;
  SegmentCcmConfig config;

  std::string verdict_label() const { return direction_label(verdict.verdict, name_a, name_b); }
};

CausalReport segment_ccm(const TimeSeries& series_a, const TimeSeries& series_b, EmbeddingParams params_a,
                         EmbeddingParams params_b, const SegmentCcmConfig& config = {});

/// Segment CCM with a caller-supplied two-way split of the aligned manifold
/// rows. `segmented_manifold` records which series the labels came from
/// (0 for a, 1 for b). No symmetry test is run.
CausalReport segment_ccm(const TimeSeries& series_a, const TimeSeries& series_b, EmbeddingParams params_a,
                         EmbeddingParams params_b, const SegmentLabels& labels, int segmented_manifold,
                         const SegmentCcmConfig& config = {});

/// Plain CCM packaged as a CausalReport (no symmetry test, no segmentation).
CausalReport plain_ccm(const TimeSeries& series_a, const TimeSeries& series_b, EmbeddingParams params_a,
                       EmbeddingParams params_b, const SegmentCcmConfig& config = {});

// Parity of the differential map ---------------------------------------------------

struct ParityResult {
  bool passed = false;
  int parity = 0;  // +1 even measurement, -1 odd
  double max_residual = 0.0;  // max |F(R x) - parity F(x)| / max(1, |F(x)|)
  int points = 0;
};

/// Evaluates F(x) = (h, L h, ..., L^{order} h) at seeded random states and at
/// their images under the system's half-turn R, and checks F(R x) = F(x) for
/// an even measurement or F(R x) = -F(x) for an odd one. order < 0 means
/// dim - 1.
ParityResult parity_check_differential(const SystemSpec& system, const Measurement& h, int n_points = 100,
                                       std::uint64_t seed = 0, int order = -1);

}  // namespace sccm
