#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqladder/eval.hpp"
#include "eqladder/ingest.hpp"
#include "eqladder/interp.hpp"
#include "eqladder/io.hpp"
#include "eqladder/ladder.hpp"
#include "eqladder/pareto.hpp"

namespace eqladder {

inline constexpr const char* kToolVersion = "0.3.0";

struct RunConfig {
  LadderConfig ladder;
  SamplingOptions sampling;
  int jobs = 1;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Applies the keys present in a JSON object onto `config`. Keys mirror the
// CLI flags: step, space, rate_min, rate_max, rate_band, q_min, q_max,
// q_step, q_band, fallback, jobs.
void apply_config_json(RunConfig& config, std::string_view json_text);
std::string config_to_json(const RunConfig& config);

struct SequenceResult {
  std::string sequence_id;
  std::vector<ResolutionCurve> curves;
  ParetoFront rq_front;
  ParetoFront eq_front;
  // rate_driven RQ, rate_driven EQ, quality_driven RQ, quality_driven EQ
  std::array<Ladder, 4> ladders;
  Warnings warnings;
};

// Interpolates, extracts both fronts and builds the four ladders for every
// sequence. Sequences run on up to config.jobs threads; results are in
// sequence-id order regardless.
std::vector<SequenceResult> process_corpus(const Corpus& corpus, const RunConfig& config);

struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  RunConfig config;
  std::string output_dir;
  std::string tool_version = kToolVersion;
  // From SOURCE_DATE_EPOCH when set; left empty otherwise so repeated runs
  // stay byte-identical.
  std::optional<std::string> created_utc;
  std::vector<std::string> outputs;  // relative to output_dir, sorted

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(std::string_view text);
std::optional<std::string> reproducible_timestamp();

// Collects written files for the manifest.
class OutputTree {
 public:
  explicit OutputTree(std::filesystem::path root);

  void write(const std::filesystem::path& relative, std::string_view content);
  const std::filesystem::path& root() const { return root_; }
  std::vector<std::string> files() const;

  // Writes manifest.json (listing itself) into the root.
  void write_manifest(RunManifest manifest);

 private:
  std::filesystem::path root_;
  std::vector<std::string> files_;
};

void write_curves(OutputTree& out, const std::vector<SequenceResult>& results);
void write_fronts(OutputTree& out, const std::vector<SequenceResult>& results,
                  const std::vector<int>& resolutions);
void write_ladders(OutputTree& out, const std::vector<SequenceResult>& results);

// ladders[kind][sequence_id], kind as in ladder_kind().
using LadderSet = std::map<std::string, std::map<std::string, Ladder>>;

// Reads every ladder JSON below `dir`.
LadderSet load_ladder_dir(const std::filesystem::path& dir);
LadderSet to_ladder_set(const std::vector<SequenceResult>& results);

struct EvalOutputs {
  std::vector<EvalRow> rows;
  std::vector<MeanLadder> mean_ladders;
};

// Without a reference set, each EQ-PF ladder is compared with the RQ-PF
// ladder of the same method. With one, every ladder kind in `proposed` is
// compared with the same kind in `reference`.
EvalOutputs evaluate_ladders(const LadderSet& proposed, const LadderSet* reference = nullptr);

void write_eval(OutputTree& out, const EvalOutputs& eval, const LadderConfig& config,
                bool against_reference, const std::filesystem::path& prefix = {});

}  // namespace eqladder
