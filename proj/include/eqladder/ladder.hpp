#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eqladder/pareto.hpp"
#include "eqladder/types.hpp"

namespace eqladder {

enum class LadderMethod { RateDriven, QualityDriven };
enum class RungStatus { Filled, Skipped };

// What to do when no front point lies inside a rung's search band.
enum class FallbackMode {
  Skip,     // leave the rung empty
  Nearest,  // take the closest unused point within half the distance to the neighbouring rungs
};

std::string_view to_string(LadderMethod method);
std::string_view to_string(RungStatus status);
std::string_view to_string(FallbackMode mode);
LadderMethod ladder_method_from_string(std::string_view text);
FallbackMode fallback_from_string(std::string_view text);

struct LadderConfig {
  double rate_min = 500.0;       // kbps
  double rate_max = 128000.0;    // kbps
  double rate_band = 0.10;       // fraction of the rung target
  double quality_min = 50.0;     // VMAF
  double quality_max = 100.0;    // VMAF
  double quality_step = 10.0;    // VMAF
  double quality_band = 5.0;     // +/- VMAF
  FallbackMode fallback = FallbackMode::Skip;

  // Throws InvalidConfig.
  void validate() const;

  friend bool operator==(const LadderConfig&, const LadderConfig&) = default;
};

struct LadderRung {
  int index = 0;  // 1-based
  double target = 0.0;
  RungStatus status = RungStatus::Skipped;
  std::optional<SampledPoint> chosen;

  friend bool operator==(const LadderRung&, const LadderRung&) = default;
};

struct Ladder {
  std::string sequence_id;
  LadderMethod method = LadderMethod::RateDriven;
  DomainTag source_domain = DomainTag::RQ;
  LadderConfig config;
  std::vector<LadderRung> rungs;

  std::size_t filled_count() const;

  friend bool operator==(const Ladder&, const Ladder&) = default;
};

// rate_min * 2^(i-1) for every i with the target not above rate_max.
std::vector<double> rate_targets(const LadderConfig& config);
// quality_min + (i-1) * quality_step up to quality_max.
std::vector<double> quality_targets(const LadderConfig& config);

Ladder rate_driven_ladder(const ParetoFront& front, const LadderConfig& config);
Ladder quality_driven_ladder(const ParetoFront& front, const LadderConfig& config);

// Filled rungs as (cost, quality) under `target`, in rung order.
std::vector<std::pair<double, double>> ladder_to_domain(const Ladder& ladder, DomainTag target);

}  // namespace eqladder
