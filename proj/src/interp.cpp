#include "eqladder/interp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eqladder/akima.hpp"
#include "eqladder/error.hpp"
#include "eqladder/io.hpp"

namespace eqladder {

std::vector<double> sampling_grid(const std::vector<double>& knots, double step) {
  if (knots.empty()) throw Error(ErrorKind::EmptyInput, "sampling grid needs knots");
  const double lo = knots.front();
  const double hi = knots.back();
  const double span = hi - lo;
  if (!(step > 0.0) || !(step <= span * (1.0 + 1e-12))) {
    throw Error(ErrorKind::InvalidConfig, "step must be in (0, " + format_shortest(span) +
                                              "], got " + format_shortest(step));
  }
  const double snap = 1e-9 * span;
  const auto count = static_cast<std::size_t>(std::floor(span / step + 1e-9));

  std::vector<double> grid;
  grid.reserve(count + 1 + knots.size());
  for (std::size_t k = 0; k <= count; ++k) grid.push_back(lo + static_cast<double>(k) * step);
  for (double& x : grid) {
    const auto it = std::lower_bound(knots.begin(), knots.end(), x - snap);
    if (it != knots.end() && std::abs(*it - x) <= snap) x = *it;
  }
  grid.insert(grid.end(), knots.begin(), knots.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  while (!grid.empty() && grid.back() > hi) grid.pop_back();
  return grid;
}

std::vector<ResolutionCurve> sample_sequence(const std::string& sequence_id,
                                             const std::vector<MeasurementPoint>& points,
                                             const SamplingOptions& options, Warnings* warnings) {
  std::vector<ResolutionCurve> curves;
  const bool log_space = options.space == InterpSpace::Log10;
  std::size_t i = 0;
  while (i < points.size()) {
    const int height = points[i].resolution_height;
    std::size_t j = i;
    std::vector<double> crf, rate, quality, energy;
    for (; j < points.size() && points[j].resolution_height == height; ++j) {
      const auto& p = points[j];
      crf.push_back(p.crf);
      rate.push_back(log_space ? std::log10(p.bitrate) : p.bitrate);
      quality.push_back(p.quality);
      energy.push_back(log_space ? std::log10(p.decode_energy) : p.decode_energy);
    }

    const AkimaSpline rate_fn(crf, rate);
    const AkimaSpline quality_fn(crf, quality);
    const AkimaSpline energy_fn(crf, energy);

    ResolutionCurve curve{sequence_id, height, {}};
    std::size_t clamped = 0;
    for (double x : sampling_grid(crf, options.step)) {
      const auto knot = std::lower_bound(crf.begin(), crf.end(), x);
      const bool is_knot = knot != crf.end() && *knot == x;
      SampledPoint s;
      s.crf = x;
      s.resolution_height = height;
      s.is_knot = is_knot;
      if (is_knot) {
        const auto& p = points[i + static_cast<std::size_t>(knot - crf.begin())];
        s.bitrate = p.bitrate;
        s.quality = p.quality;
        s.decode_energy = p.decode_energy;
      } else {
        s.bitrate = log_space ? std::pow(10.0, rate_fn(x)) : rate_fn(x);
        s.quality = std::clamp(quality_fn(x), 0.0, 100.0);
        s.decode_energy = log_space ? std::pow(10.0, energy_fn(x)) : energy_fn(x);
      }
      if (s.bitrate < kPositivityFloor) {
        s.bitrate = kPositivityFloor;
        ++clamped;
      }
      if (s.decode_energy < kPositivityFloor) {
        s.decode_energy = kPositivityFloor;
        ++clamped;
      }
      curve.samples.push_back(s);
    }
    if (clamped > 0 && warnings) {
      warnings->push_back(sequence_id + " " + std::to_string(height) + "p: clamped " +
                          std::to_string(clamped) + " interpolated values to the positivity floor");
    }
    curves.push_back(std::move(curve));
    i = j;
  }
  return curves;
}

std::vector<ResolutionCurve> sample_curves(const Corpus& corpus, const SamplingOptions& options,
                                           Warnings* warnings) {
  std::vector<ResolutionCurve> curves;
  for (const auto& [id, points] : corpus.sequences) {
    auto seq = sample_sequence(id, points, options, warnings);
    std::move(seq.begin(), seq.end(), std::back_inserter(curves));
  }
  return curves;
}

}  // namespace eqladder
