#pragma once

#include <vector>

#include "eqladder/ingest.hpp"
#include "eqladder/types.hpp"

namespace eqladder {

enum class InterpSpace {
  Linear,  // R, Q and E interpolated as-is
  Log10,   // R and E interpolated as log10 values, Q linear
};

struct SamplingOptions {
  double step = 0.1;  // CRF units
  InterpSpace space = InterpSpace::Linear;

  friend bool operator==(const SamplingOptions&, const SamplingOptions&) = default;
};

inline constexpr double kPositivityFloor = 1e-6;

// CRF abscissae {min, min+step, ..., <= max} united with the knots. Grid
// points within 1e-9 * (max - min) of a knot collapse onto the knot.
std::vector<double> sampling_grid(const std::vector<double>& knots, double step);

// One curve per (sequence, resolution), ordered by sequence then ascending
// height. Throws InvalidConfig when step is outside (0, max_crf - min_crf].
std::vector<ResolutionCurve> sample_curves(const Corpus& corpus, const SamplingOptions& options = {},
                                           Warnings* warnings = nullptr);

// Single-sequence variant used by the per-sequence pipeline.
std::vector<ResolutionCurve> sample_sequence(const std::string& sequence_id,
                                             const std::vector<MeasurementPoint>& points,
                                             const SamplingOptions& options = {},
                                             Warnings* warnings = nullptr);

}  // namespace eqladder
