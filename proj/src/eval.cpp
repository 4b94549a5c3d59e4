#include "eqladder/eval.hpp"

#include <cmath>

#include "eqladder/error.hpp"

namespace eqladder {
namespace {


// Shifted by the first value so identical inputs give their value exactly.
double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x - v.front();
  return v.front() + s / static_cast<double>(v.size());
}

// Two-pass population standard deviation.
double pop_stddev(const std::vector<double>& v, double mean) {
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size()));
}

void require_same_kind(const Ladder& a, const Ladder& b) {
  if (a.method != b.method) {
    throw Error(ErrorKind::MethodMismatch, std::string("ladders use different methods: ") +
                                               std::string(to_string(a.method)) + " vs " +
                                               std::string(to_string(b.method)));
  }
  if (!(a.config == b.config)) {
    throw Error(ErrorKind::MethodMismatch, "ladders were built with different configurations");
  }
}

}  // namespace

RelativeDiff relative_diff(const Ladder& reference, const Ladder& proposed) {
  require_same_kind(reference, proposed);

  RelativeDiff d;
  for (const auto& ref : reference.rungs) {
    if (ref.status != RungStatus::Filled || !ref.chosen) continue;
    for (const auto& prop : proposed.rungs) {
      if (prop.index != ref.index) continue;
      if (prop.status != RungStatus::Filled || !prop.chosen) break;
      const auto& r = *ref.chosen;
      const auto& p = *prop.chosen;
      d.delta_rate += (r.bitrate - p.bitrate) / r.bitrate;
      d.delta_quality += (r.quality - p.quality) / r.quality;
      d.delta_energy += (r.decode_energy - p.decode_energy) / r.decode_energy;
      ++d.rungs_compared;
      break;
    }
  }
  if (d.rungs_compared == 0) {
    throw Error(ErrorKind::NoComparableRungs,
                "no rung index is filled in both ladders of " + reference.sequence_id);
  }
  const double n = d.rungs_compared;
  d.delta_rate /= n;
  d.delta_quality /= n;
  d.delta_energy /= n;
  return d;
}

CorpusEval corpus_eval(const std::map<std::string, Ladder>& reference,
                       const std::map<std::string, Ladder>& proposed) {
  CorpusEval out;
  bool any_shared = false;
  for (const auto& [id, ref] : reference) {
    const auto it = proposed.find(id);
    if (it == proposed.end()) {
      out.missing.push_back(id);
      continue;
    }
    any_shared = true;
    try {
      out.per_sequence.emplace(id, relative_diff(ref, it->second));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoComparableRungs) throw;
      out.excluded.push_back(id);
    }
  }
  for (const auto& [id, prop] : proposed) {
    if (!reference.contains(id)) out.missing.push_back(id);
  }
  if (!any_shared) throw Error(ErrorKind::EmptyIntersection, "reference and proposed ladders share no sequence");
  if (out.per_sequence.empty()) {
    throw Error(ErrorKind::NoComparableRungs, "every shared sequence lacks comparable rungs");
  }

  std::vector<double> rate, quality, energy;
  for (const auto& [id, d] : out.per_sequence) {
    rate.push_back(d.delta_rate);
    quality.push_back(d.delta_quality);
    energy.push_back(d.delta_energy);
    out.mean.rungs_compared += d.rungs_compared;
  }
  out.mean.delta_rate = mean_of(rate);
  out.mean.delta_quality = mean_of(quality);
  out.mean.delta_energy = mean_of(energy);
  out.stddev.delta_rate = pop_stddev(rate, out.mean.delta_rate);
  out.stddev.delta_quality = pop_stddev(quality, out.mean.delta_quality);
  out.stddev.delta_energy = pop_stddev(energy, out.mean.delta_energy);
  out.stddev.rungs_compared = out.mean.rungs_compared;
  return out;
}

MeanLadder mean_ladder(const std::vector<Ladder>& ladders) {
  if (ladders.empty()) throw Error(ErrorKind::EmptyInput, "mean_ladder needs at least one ladder");
  const Ladder& first = ladders.front();
  for (const auto& l : ladders) {
    require_same_kind(first, l);
    if (l.source_domain != first.source_domain) {
      throw Error(ErrorKind::MethodMismatch, "ladders come from different source domains");
    }
  }

  struct Column {
    double target = 0.0;
    std::vector<double> rate, quality, energy;
  };
  std::map<int, Column> columns;
  for (const auto& l : ladders) {
    for (const auto& r : l.rungs) {
      auto& c = columns[r.index];
      c.target = r.target;
      if (r.status != RungStatus::Filled || !r.chosen) continue;
      c.rate.push_back(r.chosen->bitrate);
      c.quality.push_back(r.chosen->quality);
      c.energy.push_back(r.chosen->decode_energy);
    }
  }

  MeanLadder out{first.method, first.source_domain, {}};
  for (const auto& [index, c] : columns) {
    if (c.rate.empty()) continue;
    MeanRung m;
    m.index = index;
    m.target = c.target;
    m.count = static_cast<int>(c.rate.size());
    const double root_n = std::sqrt(static_cast<double>(m.count));
    m.mean_rate = mean_of(c.rate);
    m.se_rate = pop_stddev(c.rate, m.mean_rate) / root_n;
    m.mean_quality = mean_of(c.quality);
    m.se_quality = pop_stddev(c.quality, m.mean_quality) / root_n;
    m.mean_energy = mean_of(c.energy);
    m.se_energy = pop_stddev(c.energy, m.mean_energy) / root_n;
    out.rungs.push_back(m);
  }
  return out;
}

}  // namespace eqladder
