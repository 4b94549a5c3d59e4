#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "eqladder/eval.hpp"
#include "eqladder/ingest.hpp"
#include "eqladder/ladder.hpp"
#include "eqladder/pareto.hpp"

namespace eqladder {

// Six significant digits, "%.6g" style, with negative zero printed as 0.
std::string format_sig6(double value);
// Shortest text that parses back to the identical double.
std::string format_shortest(double value);

std::string read_text_file(const std::filesystem::path& path);
// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string summary_to_csv(const SummaryStats& summary);
std::string parameter_space_csv(const Corpus& corpus);

std::string curves_to_csv(const std::vector<ResolutionCurve>& curves);
std::string fronts_to_csv(const std::vector<ParetoFront>& fronts);
std::string fronts_plot_csv(const std::vector<ParetoFront>& fronts);

struct SequenceComposition {
  std::string sequence_id;
  CompositionHistogram histogram;
};
std::string composition_to_csv(const std::vector<SequenceComposition>& rows);
// Mean share per (domain, resolution) over sequences, as in a histogram of
// front composition across the corpus.
std::string composition_mean_csv(const std::vector<SequenceComposition>& rows,
                                 const std::vector<int>& resolutions);

std::string ladder_to_json(const Ladder& ladder);
Ladder ladder_from_json(std::string_view text);
std::string ladders_to_csv(const std::vector<Ladder>& ladders);
std::string ladders_plot_csv(const std::vector<Ladder>& ladders);

// Short label such as "rate_driven_EQ".
std::string ladder_kind(LadderMethod method, DomainTag domain);

struct EvalRow {
  std::string label;  // e.g. "rate_driven_EQ-PF"
  std::string reference_kind;
  std::string proposed_kind;
  CorpusEval result;
};
std::string eval_table_csv(const std::vector<EvalRow>& rows);
std::string eval_report_json(const std::vector<EvalRow>& rows, const LadderConfig& config,
                             std::string_view mode);

std::string mean_ladders_csv(const std::vector<MeanLadder>& ladders);
// Long-format plot data for the RQ (log10 rate, VMAF), EQ (log10 energy,
// VMAF) and RE (log10 rate, log10 energy) views, with mean +/- SE bounds.
std::string mean_ladders_plot_csv(const std::vector<MeanLadder>& ladders);

}  // namespace eqladder
