#include "eqladder/pareto.hpp"

#include <algorithm>

#include "eqladder/error.hpp"

namespace eqladder {

bool front_order_less(const SampledPoint& a, const SampledPoint& b, DomainTag domain) {
  const double ca = cost_of(a, domain);
  const double cb = cost_of(b, domain);
  if (ca != cb) return ca < cb;
  if (a.quality != b.quality) return a.quality > b.quality;
  if (a.resolution_height != b.resolution_height) return a.resolution_height < b.resolution_height;
  return a.crf < b.crf;
}

ParetoFront extract_front(const std::string& sequence_id, std::span<const SampledPoint> candidates,
                          DomainTag domain) {
  if (candidates.empty()) throw Error(ErrorKind::EmptyInput, "no candidate points for " + sequence_id);

  std::vector<SampledPoint> sorted(candidates.begin(), candidates.end());
  std::stable_sort(sorted.begin(), sorted.end(), [domain](const auto& a, const auto& b) {
    return front_order_less(a, b, domain);
  });

  ParetoFront front{sequence_id, domain, {}};
  for (const auto& p : sorted) {
    if (front.points.empty() || p.quality > front.points.back().quality) front.points.push_back(p);
  }
  return front;
}

ParetoFront extract_front(const std::vector<ResolutionCurve>& curves, DomainTag domain) {
  if (curves.empty()) throw Error(ErrorKind::EmptyInput, "no curves to pool");
  const std::string& id = curves.front().sequence_id;
  std::vector<SampledPoint> pooled;
  for (const auto& c : curves) {
    if (c.sequence_id != id) {
      throw Error(ErrorKind::MixedSequences,
                  "curves mix sequences '" + id + "' and '" + c.sequence_id + "'");
    }
    pooled.insert(pooled.end(), c.samples.begin(), c.samples.end());
  }
  return extract_front(id, pooled, domain);
}

CompositionHistogram front_composition(const ParetoFront& front) {
  if (front.points.empty()) throw Error(ErrorKind::EmptyFront, "front of " + front.sequence_id + " is empty");
  CompositionHistogram hist{front.domain, {}};
  std::map<int, std::size_t> counts;
  for (const auto& p : front.points) ++counts[p.resolution_height];
  const auto total = static_cast<double>(front.points.size());
  for (const auto& [height, n] : counts) hist.share[height] = static_cast<double>(n) / total;
  return hist;
}

std::vector<AxisPoint> project_front(const ParetoFront& front, DomainTag target) {
  std::vector<AxisPoint> out;
  out.reserve(front.points.size());
  for (const auto& p : front.points) out.push_back({cost_of(p, target), p.quality, p});
  return out;
}

bool is_monotone(std::span<const AxisPoint> points) {
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].cost > points[i - 1].cost) || !(points[i].quality > points[i - 1].quality)) {
      return false;
    }
  }
  return true;
}

}  // namespace eqladder
