#pragma once

#include <map>
#include <string>
#include <vector>

#include "eqladder/ladder.hpp"

namespace eqladder {

// Mean relative difference (ref - prop) / ref over index-paired rungs that
// are filled in both ladders. Positive values mean the proposed ladder needs
// less of that quantity.
struct RelativeDiff {
  double delta_rate = 0.0;
  double delta_quality = 0.0;
  double delta_energy = 0.0;
  int rungs_compared = 0;

  friend bool operator==(const RelativeDiff&, const RelativeDiff&) = default;
};

struct CorpusEval {
  std::map<std::string, RelativeDiff> per_sequence;
  RelativeDiff mean;
  RelativeDiff stddev;  // population standard deviation across sequences
  std::vector<std::string> excluded;  // sequences without comparable rungs
  std::vector<std::string> missing;   // present in only one of the two maps
};

struct MeanRung {
  int index = 0;
  double target = 0.0;
  int count = 0;
  double mean_rate = 0.0;
  double se_rate = 0.0;
  double mean_quality = 0.0;
  double se_quality = 0.0;
  double mean_energy = 0.0;
  double se_energy = 0.0;
};

struct MeanLadder {
  LadderMethod method = LadderMethod::RateDriven;
  DomainTag source_domain = DomainTag::RQ;
  std::vector<MeanRung> rungs;  // rungs filled nowhere are omitted
};

// Throws MethodMismatch (method or config differ) or NoComparableRungs.
RelativeDiff relative_diff(const Ladder& reference, const Ladder& proposed);

// Throws EmptyIntersection when no sequence is shared, NoComparableRungs when
// every shared sequence was excluded.
CorpusEval corpus_eval(const std::map<std::string, Ladder>& reference,
                       const std::map<std::string, Ladder>& proposed);

// Standard error uses the population standard deviation over the ladders that
// fill the rung. Throws EmptyInput or MethodMismatch.
MeanLadder mean_ladder(const std::vector<Ladder>& ladders);

}  // namespace eqladder
