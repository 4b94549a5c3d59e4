#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "eqladder/types.hpp"

namespace eqladder {

struct ParetoFront {
  std::string sequence_id;
  DomainTag domain = DomainTag::RQ;
  std::vector<SampledPoint> points;  // cost and quality strictly increasing
};

struct CompositionHistogram {
  DomainTag domain = DomainTag::RQ;
  std::map<int, double> share;  // resolution height -> fraction of front points
};

// A point read under a particular (cost, quality) domain.
struct AxisPoint {
  double cost = 0.0;
  double quality = 0.0;
  SampledPoint point;
};

// Deterministic total order used for tie-breaking: cost ascending, quality
// descending, then lower resolution, then lower CRF.
bool front_order_less(const SampledPoint& a, const SampledPoint& b, DomainTag domain);

// Non-dominated subset of `candidates` under weak dominance. Among points with
// equal cost only the highest quality survives; among equal quality only the
// lowest cost; exact duplicates resolve to the lower resolution, then CRF.
ParetoFront extract_front(const std::string& sequence_id, std::span<const SampledPoint> candidates,
                          DomainTag domain);

// Pools every sample of `curves`; throws EmptyInput or MixedSequences.
ParetoFront extract_front(const std::vector<ResolutionCurve>& curves, DomainTag domain);

CompositionHistogram front_composition(const ParetoFront& front);

// Re-reads the front under another domain. Source order is kept, so the
// result is in general not monotone.
std::vector<AxisPoint> project_front(const ParetoFront& front, DomainTag target);

// True when cost and quality are both strictly increasing along the list.
bool is_monotone(std::span<const AxisPoint> points);

}  // namespace eqladder
