#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eqladder {

// One encode/decode observation. Units: kbps, VMAF, joules.
struct MeasurementPoint {
  std::string sequence_id;
  int resolution_height = 0;
  double crf = 0.0;
  double bitrate = 0.0;
  double quality = 0.0;
  double decode_energy = 0.0;
  std::optional<double> encode_energy;

  friend bool operator==(const MeasurementPoint&, const MeasurementPoint&) = default;
};

// Validated measurement corpus. Points of a sequence are kept sorted by
// (resolution_height, crf), both ascending.
struct Corpus {
  std::map<std::string, std::vector<MeasurementPoint>> sequences;
  std::vector<int> resolutions;  // ascending
  std::vector<double> crf_grid;  // ascending

  std::size_t point_count() const;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

struct SampledPoint {
  double crf = 0.0;
  double bitrate = 0.0;
  double quality = 0.0;
  double decode_energy = 0.0;
  int resolution_height = 0;
  bool is_knot = false;

  friend bool operator==(const SampledPoint&, const SampledPoint&) = default;
};

struct ResolutionCurve {
  std::string sequence_id;
  int resolution_height = 0;
  std::vector<SampledPoint> samples;  // crf strictly increasing
};

// Cost axis selector: bitrate for RQ, decode energy for EQ. Quality is VMAF
// in both.
enum class DomainTag { RQ, EQ };

std::string_view to_string(DomainTag domain);
DomainTag domain_from_string(std::string_view text);

inline double cost_of(const SampledPoint& p, DomainTag domain) {
  return domain == DomainTag::RQ ? p.bitrate : p.decode_energy;
}

}  // namespace eqladder
