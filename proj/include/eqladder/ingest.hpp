#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "eqladder/types.hpp"

namespace eqladder {

enum class CorpusFormat { Auto, Csv, Json };

CorpusFormat corpus_format_from_string(std::string_view text);

// Non-fatal findings (unknown columns, quality rising with CRF, ...).
using Warnings = std::vector<std::string>;

// Builds a Corpus from loose points. Checks value ranges, key uniqueness and
// grid completeness; throws Error on the first violation. Quality increasing
// with CRF inside a (sequence, resolution) group is only warned about.
Corpus build_corpus(std::vector<MeasurementPoint> points, Warnings* warnings = nullptr);

Corpus parse_corpus_csv(std::string_view text, Warnings* warnings = nullptr);
Corpus parse_corpus_json(std::string_view text, Warnings* warnings = nullptr);

// Format Auto picks by file extension (.json, otherwise CSV).
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format = CorpusFormat::Auto,
                   Warnings* warnings = nullptr);

// Corpus export uses shortest round-trip float formatting so that
// parse(export(c)) == c exactly.
std::string corpus_to_csv(const Corpus& corpus);
std::string corpus_to_json(const Corpus& corpus);

struct RangeStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

struct ResolutionSummary {
  int resolution_height = 0;
  std::size_t count = 0;
  RangeStats bitrate;
  RangeStats quality;
  RangeStats decode_energy;
  RangeStats log10_bitrate;
  RangeStats log10_energy;
};

struct SummaryStats {
  std::size_t sequence_count = 0;
  std::size_t point_count = 0;
  std::vector<ResolutionSummary> per_resolution;  // ascending height
};

SummaryStats corpus_summary(const Corpus& corpus);

}  // namespace eqladder
