#include "eqladder/ladder.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "eqladder/error.hpp"

namespace eqladder {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Lower resolution, then lower CRF.
bool tie_less(const SampledPoint& a, const SampledPoint& b) {
  if (a.resolution_height != b.resolution_height) return a.resolution_height < b.resolution_height;
  return a.crf < b.crf;
}

template <typename Eligible, typename Better>
std::size_t pick(const std::vector<SampledPoint>& points, const std::vector<bool>& used,
                 Eligible eligible, Better better) {
  std::size_t best = kNone;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (used[k] || !eligible(points[k])) continue;
    if (best == kNone || better(points[k], points[best])) best = k;
  }
  return best;
}

Ladder make_ladder(const ParetoFront& front, LadderMethod method, const LadderConfig& config) {
  Ladder ladder;
  ladder.sequence_id = front.sequence_id;
  ladder.method = method;
  ladder.source_domain = front.domain;
  ladder.config = config;
  return ladder;
}

void fill(Ladder& ladder, std::size_t index, double target, const std::vector<SampledPoint>& points,
          std::vector<bool>& used, std::size_t chosen) {
  LadderRung rung{static_cast<int>(index + 1), target, RungStatus::Skipped, std::nullopt};
  if (chosen != kNone) {
    used[chosen] = true;
    rung.status = RungStatus::Filled;
    rung.chosen = points[chosen];
  }
  ladder.rungs.push_back(rung);
}

}  // namespace

std::string_view to_string(LadderMethod method) {
  return method == LadderMethod::RateDriven ? "rate_driven" : "quality_driven";
}

std::string_view to_string(RungStatus status) {
  return status == RungStatus::Filled ? "filled" : "skipped";
}

std::string_view to_string(FallbackMode mode) {
  return mode == FallbackMode::Skip ? "skip" : "nearest";
}

LadderMethod ladder_method_from_string(std::string_view text) {
  if (text == "rate_driven") return LadderMethod::RateDriven;
  if (text == "quality_driven") return LadderMethod::QualityDriven;
  throw Error(ErrorKind::ParseError, "unknown ladder method '" + std::string(text) + "'");
}

FallbackMode fallback_from_string(std::string_view text) {
  if (text == "skip") return FallbackMode::Skip;
  if (text == "nearest") return FallbackMode::Nearest;
  throw Error(ErrorKind::InvalidConfig, "unknown fallback mode '" + std::string(text) + "'");
}

void LadderConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); };
  if (!(rate_min > 0.0)) fail("rate_min must be > 0");
  if (!(rate_min < rate_max) || !std::isfinite(rate_max)) fail("rate_min must be < rate_max");
  if (!(rate_band > 0.0 && rate_band < 1.0)) fail("rate_band must be in (0, 1)");
  if (!(quality_min < quality_max) || !std::isfinite(quality_min) || !std::isfinite(quality_max)) {
    fail("quality_min must be < quality_max");
  }
  if (!(quality_step > 0.0)) fail("quality_step must be > 0");
  if (!(quality_band > 0.0) || !std::isfinite(quality_band)) fail("quality_band must be > 0");
}

std::size_t Ladder::filled_count() const {
  std::size_t n = 0;
  for (const auto& r : rungs) n += r.status == RungStatus::Filled;
  return n;
}

std::vector<double> rate_targets(const LadderConfig& config) {
  config.validate();
  std::vector<double> targets;
  const double limit = config.rate_max * (1.0 + 1e-12);
  for (int i = 0;; ++i) {
    const double t = std::ldexp(config.rate_min, i);
    if (t > limit) break;
    targets.push_back(t);
  }
  return targets;
}

std::vector<double> quality_targets(const LadderConfig& config) {
  config.validate();
  std::vector<double> targets;
  const double limit = config.quality_max + 1e-9 * config.quality_step;
  for (int i = 0;; ++i) {
    const double t = config.quality_min + static_cast<double>(i) * config.quality_step;
    if (t > limit) break;
    targets.push_back(t);
  }
  return targets;
}

Ladder rate_driven_ladder(const ParetoFront& front, const LadderConfig& config) {
  const auto targets = rate_targets(config);
  Ladder ladder = make_ladder(front, LadderMethod::RateDriven, config);
  const auto& points = front.points;
  std::vector<bool> used(points.size(), false);
  double last = -std::numeric_limits<double>::infinity();

  const auto lower_rate = [](const SampledPoint& a, const SampledPoint& b) {
    return a.bitrate != b.bitrate ? a.bitrate < b.bitrate : tie_less(a, b);
  };

  for (std::size_t i = 0; i < targets.size(); ++i) {
    const double t = targets[i];
    const double lo = t * (1.0 - config.rate_band);
    const double hi = t * (1.0 + config.rate_band);
    std::size_t chosen = pick(
        points, used,
        [&](const SampledPoint& p) { return p.bitrate > last && p.bitrate >= lo && p.bitrate <= hi; },
        lower_rate);
    if (chosen == kNone && config.fallback == FallbackMode::Nearest) {
      // Catchment ends halfway (geometrically) to the neighbouring targets.
      const double c_lo = t / std::sqrt(2.0);
      const double c_hi = t * std::sqrt(2.0);
      chosen = pick(
          points, used,
          [&](const SampledPoint& p) { return p.bitrate > last && p.bitrate >= c_lo && p.bitrate < c_hi; },
          [&](const SampledPoint& a, const SampledPoint& b) {
            const double da = std::abs(a.bitrate - t);
            const double db = std::abs(b.bitrate - t);
            return da != db ? da < db : lower_rate(a, b);
          });
    }
    fill(ladder, i, t, points, used, chosen);
    if (chosen != kNone) last = points[chosen].bitrate;
  }
  return ladder;
}

Ladder quality_driven_ladder(const ParetoFront& front, const LadderConfig& config) {
  const auto targets = quality_targets(config);
  Ladder ladder = make_ladder(front, LadderMethod::QualityDriven, config);
  const auto& points = front.points;
  const DomainTag domain = front.domain;
  std::vector<bool> used(points.size(), false);
  double last = -std::numeric_limits<double>::infinity();

  const auto lower_cost = [domain](const SampledPoint& a, const SampledPoint& b) {
    const double ca = cost_of(a, domain);
    const double cb = cost_of(b, domain);
    return ca != cb ? ca < cb : tie_less(a, b);
  };

  for (std::size_t i = 0; i < targets.size(); ++i) {
    const double t = targets[i];
    const double lo = t - config.quality_band;
    const double hi = t + config.quality_band;
    std::size_t chosen = pick(
        points, used,
        [&](const SampledPoint& p) { return p.quality > last && p.quality >= lo && p.quality <= hi; },
        lower_cost);
    if (chosen == kNone && config.fallback == FallbackMode::Nearest) {
      const double c_lo = t - 0.5 * config.quality_step;
      const double c_hi = t + 0.5 * config.quality_step;
      chosen = pick(
          points, used,
          [&](const SampledPoint& p) { return p.quality > last && p.quality >= c_lo && p.quality < c_hi; },
          [&](const SampledPoint& a, const SampledPoint& b) {
            const double da = std::abs(a.quality - t);
            const double db = std::abs(b.quality - t);
            return da != db ? da < db : lower_cost(a, b);
          });
    }
    fill(ladder, i, t, points, used, chosen);
    if (chosen != kNone) last = points[chosen].quality;
  }
  return ladder;
}

std::vector<std::pair<double, double>> ladder_to_domain(const Ladder& ladder, DomainTag target) {
  std::vector<std::pair<double, double>> out;
  for (const auto& r : ladder.rungs) {
    if (r.status == RungStatus::Filled && r.chosen) {
      out.emplace_back(cost_of(*r.chosen, target), r.chosen->quality);
    }
  }
  return out;
}

}  // namespace eqladder
