// eqladder: rate/energy-quality bitrate ladder construction and evaluation.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "eqladder/error.hpp"
#include "eqladder/ingest.hpp"
#include "eqladder/io.hpp"
#include "eqladder/pipeline.hpp"
#include "eqladder/synth.hpp"

namespace fs = std::filesystem;
using namespace eqladder;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::IncompleteGrid:
    case ErrorKind::DuplicateKey:
    case ErrorKind::NonPositiveValue:
    case ErrorKind::EmptyCorpus:
    case ErrorKind::InvalidSpec:
    case ErrorKind::InvalidConfig:
    case ErrorKind::IoError:
      return 2;
    case ErrorKind::EmptyIntersection:
      return 3;
    case ErrorKind::NoComparableRungs:
    case ErrorKind::MethodMismatch:
      return 4;
    case ErrorKind::OutputError:
      return 6;
    default:
      return 5;
  }
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
    if (c == '"') c = '\'';
  }
  return s;
}

int report_error(std::string_view kind, int code, const std::string& message) {
  std::cerr << "error: kind=" << kind << " exit=" << code << " message=\"" << one_line(message) << "\"\n";
  return code;
}

struct CommonFlags {
  std::string config_file;
  std::optional<double> step, rate_min, rate_max, rate_band, q_min, q_max, q_step, q_band;
  std::optional<std::string> space, fallback;
  std::optional<int> jobs;
  bool quiet = false;

  void attach(CLI::App* app) {
    app->add_option("--config", config_file, "JSON config file; flags override its values");
    app->add_option("--step", step, "CRF sampling step (default 0.1)");
    app->add_option("--space", space, "interpolation space: linear or log10")
        ->check(CLI::IsMember({"linear", "log10"}));
    app->add_option("--rate-min", rate_min, "first rate rung in kbps (default 500)");
    app->add_option("--rate-max", rate_max, "upper rate rung limit in kbps (default 128000)");
    app->add_option("--rate-band", rate_band, "relative rate search band (default 0.10)");
    app->add_option("--q-min", q_min, "first quality rung (default 50)");
    app->add_option("--q-max", q_max, "last quality rung (default 100)");
    app->add_option("--q-step", q_step, "quality rung spacing (default 10)");
    app->add_option("--q-band", q_band, "quality search band, +/- VMAF (default 5)");
    app->add_option("--fallback", fallback, "empty band handling: skip or nearest")
        ->check(CLI::IsMember({"skip", "nearest"}));
    app->add_option("--jobs", jobs, "sequences processed concurrently (default 1)");
    app->add_flag("--quiet", quiet, "suppress warnings");
  }

  RunConfig resolve() const {
    RunConfig c;
    if (!config_file.empty()) apply_config_json(c, read_text_file(config_file));
    if (step) c.sampling.step = *step;
    if (space) c.sampling.space = *space == "log10" ? InterpSpace::Log10 : InterpSpace::Linear;
    if (rate_min) c.ladder.rate_min = *rate_min;
    if (rate_max) c.ladder.rate_max = *rate_max;
    if (rate_band) c.ladder.rate_band = *rate_band;
    if (q_min) c.ladder.quality_min = *q_min;
    if (q_max) c.ladder.quality_max = *q_max;
    if (q_step) c.ladder.quality_step = *q_step;
    if (q_band) c.ladder.quality_band = *q_band;
    if (fallback) c.ladder.fallback = fallback_from_string(*fallback);
    if (jobs) c.jobs = *jobs;
    c.ladder.validate();
    if (c.jobs < 1) throw Error(ErrorKind::InvalidConfig, "jobs must be >= 1");
    return c;
  }
};

void print_warnings(const Warnings& warnings, bool quiet) {
  if (quiet) return;
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

RunManifest manifest_for(const std::string& command, std::vector<std::string> inputs, const RunConfig& config,
                         const fs::path& out_dir) {
  RunManifest m;
  m.command = command;
  m.inputs = std::move(inputs);
  m.config = config;
  m.output_dir = out_dir.generic_string();
  m.created_utc = reproducible_timestamp();
  return m;
}

Corpus load_checked(const std::string& path, const std::string& format, bool quiet) {
  Warnings warnings;
  Corpus corpus = load_corpus(path, corpus_format_from_string(format), &warnings);
  print_warnings(warnings, quiet);
  return corpus;
}

std::vector<SequenceResult> run_pipeline(const Corpus& corpus, const RunConfig& config, bool quiet) {
  auto results = process_corpus(corpus, config);
  for (const auto& r : results) print_warnings(r.warnings, quiet);
  return results;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bitrate ladders from rate-quality-energy measurements"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  // synth
  std::string spec_path, synth_out, synth_format = "auto";
  std::optional<std::uint64_t> seed;
  auto* synth = app.add_subcommand("synth", "generate a synthetic measurement corpus");
  synth->add_option("--spec", spec_path, "synth spec JSON")->required();
  synth->add_option("--out", synth_out, "output corpus file (.csv or .json)")->required();
  synth->add_option("--format", synth_format, "csv, json or auto (by extension)")
      ->check(CLI::IsMember({"auto", "csv", "json"}));
  synth->add_option("--seed", seed, "override rng_seed");

  // corpus-consuming commands
  struct CorpusCommand {
    CLI::App* app = nullptr;
    std::string corpus;
    std::string format = "auto";
    std::string out;
    CommonFlags flags;
  };
  std::map<std::string, CorpusCommand> commands;
  const std::pair<const char*, const char*> corpus_commands[] = {
      {"ingest-check", "validate a corpus and print summary statistics"},
      {"curves", "Akima-interpolate every (sequence, resolution) group"},
      {"fronts", "extract RQ and EQ Pareto fronts and their composition"},
      {"ladders", "build the four ladder variants per sequence"},
      {"report", "ladders plus evaluation in one run"},
  };
  for (const auto& [name, help] : corpus_commands) {
    auto& c = commands[name];
    c.app = app.add_subcommand(name, help);
    c.app->add_option("corpus", c.corpus, "measurement corpus (CSV or JSON)")->required();
    c.app->add_option("--format", c.format, "csv, json or auto")->check(CLI::IsMember({"auto", "csv", "json"}));
    auto* out = c.app->add_option("--out", c.out, "output directory");
    if (std::string(name) != "ingest-check") out->required();
    c.flags.attach(c.app);
  }

  // eval
  std::string ladder_dir, reference_dir, eval_out;
  CommonFlags eval_flags;
  auto* eval = app.add_subcommand("eval", "compare ladders with the mean relative difference");
  eval->add_option("ladder-dir", ladder_dir, "directory written by 'ladders'")->required();
  eval->add_option("--reference-dir", reference_dir, "compare every ladder kind against this directory");
  eval->add_option("--out", eval_out, "output directory")->required();
  eval_flags.attach(eval);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("UsageError", kExitUsage, e.what());
  }

  try {
    if (synth->parsed()) {
      SynthSpec spec = synth_spec_from_json(read_text_file(spec_path));
      if (seed) spec.rng_seed = *seed;
      const Corpus corpus = make_synthetic_corpus(spec);
      const bool json = synth_format == "json" ||
                        (synth_format == "auto" && fs::path(synth_out).extension() == ".json");
      write_file_atomic(synth_out, json ? corpus_to_json(corpus) : corpus_to_csv(corpus));
      return 0;
    }

    if (eval->parsed()) {
      const RunConfig config = eval_flags.resolve();
      const LadderSet proposed = load_ladder_dir(ladder_dir);
      std::optional<LadderSet> reference;
      if (!reference_dir.empty()) reference = load_ladder_dir(reference_dir);
      const EvalOutputs result = evaluate_ladders(proposed, reference ? &*reference : nullptr);
      LadderConfig echo = config.ladder;
      for (const auto& [kind, ladders] : proposed) {
        if (!ladders.empty()) {
          echo = ladders.begin()->second.config;
          break;
        }
      }
      OutputTree out(eval_out);
      write_eval(out, result, echo, reference.has_value());
      std::vector<std::string> inputs{ladder_dir};
      if (reference) inputs.push_back(reference_dir);
      out.write_manifest(manifest_for("eval", inputs, config, eval_out));
      std::cout << eval_table_csv(result.rows);
      return 0;
    }

    for (auto& [name, c] : commands) {
      if (!c.app->parsed()) continue;
      const RunConfig config = c.flags.resolve();
      const Corpus corpus = load_checked(c.corpus, c.format, c.flags.quiet);

      if (name == "ingest-check") {
        const SummaryStats summary = corpus_summary(corpus);
        std::cout << "sequences=" << summary.sequence_count << " points=" << summary.point_count
                  << " resolutions=" << summary.per_resolution.size() << " crf_values=" << corpus.crf_grid.size()
                  << '\n'
                  << summary_to_csv(summary);
        if (!c.out.empty()) {
          OutputTree out(c.out);
          out.write("summary.csv", summary_to_csv(summary));
          out.write("parameter_space.csv", parameter_space_csv(corpus));
          out.write_manifest(manifest_for(name, {c.corpus}, config, c.out));
        }
        return 0;
      }

      const auto results = run_pipeline(corpus, config, c.flags.quiet);
      OutputTree out(c.out);
      if (name == "curves") {
        write_curves(out, results);
      } else if (name == "fronts") {
        write_fronts(out, results, corpus.resolutions);
      } else {
        write_fronts(out, results, corpus.resolutions);
        write_ladders(out, results);
        if (name == "report") {
          write_curves(out, results);
          out.write("summary.csv", summary_to_csv(corpus_summary(corpus)));
          out.write("parameter_space.csv", parameter_space_csv(corpus));
          const EvalOutputs result = evaluate_ladders(to_ladder_set(results));
          write_eval(out, result, config.ladder, false, "eval");
          std::cout << eval_table_csv(result.rows);
        }
      }
      out.write_manifest(manifest_for(name, {c.corpus}, config, c.out));
      return 0;
    }
  } catch (const Error& e) {
    return report_error(to_string(e.kind()), exit_code(e.kind()), e.what());
  } catch (const std::exception& e) {
    return report_error("InternalError", kExitInternal, e.what());
  }
  return kExitUsage;
}
