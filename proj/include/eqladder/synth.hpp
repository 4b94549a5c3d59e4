#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "eqladder/types.hpp"

namespace eqladder {

// Closed-form per-resolution model:
//   R(crf) = c * base_rate * 2^(-crf / halving_crf)
//   Q(R)   = quality_ceiling / (1 + exp(-quality_slope * (log10 R - m)))
//            with m = quality_midpoint + 0.5 * log10 c
//   E(R)   = base_energy * energy_offset + energy_per_kbps * R
// where c is the per-sequence complexity factor.
struct ResolutionModel {
  int height = 0;
  double base_rate = 0.0;     // kbps at crf 0
  double halving_crf = 6.0;   // CRF increase that halves the rate
  double quality_ceiling = 100.0;
  double quality_slope = 2.0;
  double quality_midpoint = 3.0;  // log10 kbps
  double energy_offset = 1.0;     // multiplies base_energy

  friend bool operator==(const ResolutionModel&, const ResolutionModel&) = default;
};

struct SynthSpec {
  int sequence_count = 3;
  std::vector<ResolutionModel> resolutions;
  std::vector<double> crf_grid{10, 20, 30, 40, 50};
  double base_energy = 100.0;       // joules
  double energy_per_kbps = 0.0005;  // joules per kbps
  // Complexity of sequence k (of n) is 2^(spread * (k / (n - 1) - 0.5)).
  double complexity_spread = 1.0;
  double noise = 0.0;  // relative amplitude of uniform multiplicative noise
  std::uint64_t rng_seed = 1;
  std::string id_prefix = "synth";

  // Throws InvalidSpec.
  void validate() const;

  friend bool operator==(const SynthSpec&, const SynthSpec&) = default;
};

// 2160p/1080p/720p with energy offsets 9x/3x/1x and overlapping bitrate
// ranges.
SynthSpec default_synth_spec();

// Variant with a shallow 2160p and a steep 1080p rate-quality curve: the RQ
// front runs 720p -> 2160p -> 1080p, so RQ-PF ladders step down in energy
// while quality still rises.
SynthSpec crossed_synth_spec();

double sequence_complexity(const SynthSpec& spec, int sequence_index);

// Noise-free model value for one grid cell.
MeasurementPoint model_point(const SynthSpec& spec, int sequence_index, const ResolutionModel& model,
                             double crf);

Corpus make_synthetic_corpus(const SynthSpec& spec);

SynthSpec synth_spec_from_json(std::string_view text);
std::string synth_spec_to_json(const SynthSpec& spec);

}  // namespace eqladder
