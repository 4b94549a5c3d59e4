#include "eqladder/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <set>
#include <thread>

#include "eqladder/error.hpp"
#include "eqladder/io.hpp"
#include "json.hpp"

namespace eqladder {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

InterpSpace space_from_string(const std::string& s) {
  if (s == "linear") return InterpSpace::Linear;
  if (s == "log10") return InterpSpace::Log10;
  throw Error(ErrorKind::InvalidConfig, "unknown interpolation space '" + s + "'");
}

std::string to_string(InterpSpace space) { return space == InterpSpace::Log10 ? "log10" : "linear"; }

json config_doc(const RunConfig& c) {
  return {{"step", c.sampling.step},
          {"space", to_string(c.sampling.space)},
          {"rate_min", c.ladder.rate_min},
          {"rate_max", c.ladder.rate_max},
          {"rate_band", c.ladder.rate_band},
          {"q_min", c.ladder.quality_min},
          {"q_max", c.ladder.quality_max},
          {"q_step", c.ladder.quality_step},
          {"q_band", c.ladder.quality_band},
          {"fallback", std::string(to_string(c.ladder.fallback))},
          {"jobs", c.jobs}};
}

void apply_config_doc(RunConfig& c, const json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::InvalidConfig, "config must be a JSON object");
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "step") c.sampling.step = value.get<double>();
      else if (key == "space") c.sampling.space = space_from_string(value.get<std::string>());
      else if (key == "rate_min") c.ladder.rate_min = value.get<double>();
      else if (key == "rate_max") c.ladder.rate_max = value.get<double>();
      else if (key == "rate_band") c.ladder.rate_band = value.get<double>();
      else if (key == "q_min") c.ladder.quality_min = value.get<double>();
      else if (key == "q_max") c.ladder.quality_max = value.get<double>();
      else if (key == "q_step") c.ladder.quality_step = value.get<double>();
      else if (key == "q_band") c.ladder.quality_band = value.get<double>();
      else if (key == "fallback") c.ladder.fallback = fallback_from_string(value.get<std::string>());
      else if (key == "jobs") c.jobs = value.get<int>();
      else throw Error(ErrorKind::InvalidConfig, "unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("malformed config: ") + e.what());
  }
}

SequenceResult process_sequence(const std::string& id, const std::vector<MeasurementPoint>& points,
                                const RunConfig& config) {
  SequenceResult r;
  r.sequence_id = id;
  r.curves = sample_sequence(id, points, config.sampling, &r.warnings);
  r.rq_front = extract_front(r.curves, DomainTag::RQ);
  r.eq_front = extract_front(r.curves, DomainTag::EQ);
  r.ladders = {rate_driven_ladder(r.rq_front, config.ladder), rate_driven_ladder(r.eq_front, config.ladder),
               quality_driven_ladder(r.rq_front, config.ladder),
               quality_driven_ladder(r.eq_front, config.ladder)};
  return r;
}

}  // namespace

void apply_config_json(RunConfig& config, std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("invalid config JSON: ") + e.what());
  }
  apply_config_doc(config, doc);
}

std::string config_to_json(const RunConfig& config) { return config_doc(config).dump(2) + "\n"; }

std::vector<SequenceResult> process_corpus(const Corpus& corpus, const RunConfig& config) {
  config.ladder.validate();
  if (config.jobs < 1) throw Error(ErrorKind::InvalidConfig, "jobs must be >= 1");
  if (corpus.sequences.empty()) throw Error(ErrorKind::EmptyCorpus, "corpus has no sequences");

  std::vector<const std::pair<const std::string, std::vector<MeasurementPoint>>*> work;
  for (const auto& entry : corpus.sequences) work.push_back(&entry);

  std::vector<SequenceResult> results(work.size());
  std::vector<std::exception_ptr> errors(work.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < work.size(); i = next++) {
      try {
        results[i] = process_sequence(work[i]->first, work[i]->second, config);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(config.jobs), work.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

std::string manifest_to_json(const RunManifest& m) {
  json doc = {{"command", m.command},
              {"inputs", m.inputs},
              {"config", config_doc(m.config)},
              {"output_dir", m.output_dir},
              {"tool_version", m.tool_version},
              {"created_utc", m.created_utc ? json(*m.created_utc) : json(nullptr)},
              {"outputs", m.outputs}};
  return doc.dump(2) + "\n";
}

RunManifest manifest_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    RunManifest m;
    m.command = doc.at("command").get<std::string>();
    m.inputs = doc.at("inputs").get<std::vector<std::string>>();
    apply_config_doc(m.config, doc.at("config"));
    m.output_dir = doc.at("output_dir").get<std::string>();
    m.tool_version = doc.at("tool_version").get<std::string>();
    if (const auto& t = doc.at("created_utc"); !t.is_null()) m.created_utc = t.get<std::string>();
    m.outputs = doc.at("outputs").get<std::vector<std::string>>();
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed manifest: ") + e.what());
  }
}

std::optional<std::string> reproducible_timestamp() {
  const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
  if (!epoch || !*epoch) return std::nullopt;
  char* end = nullptr;
  const long long secs = std::strtoll(epoch, &end, 10);
  if (*end != '\0' || secs < 0) return std::nullopt;
  const std::time_t t = static_cast<std::time_t>(secs);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string(buf);
}

OutputTree::OutputTree(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec) throw Error(ErrorKind::OutputError, "cannot create '" + root_.string() + "': " + ec.message());
}

void OutputTree::write(const fs::path& relative, std::string_view content) {
  write_file_atomic(root_ / relative, content);
  files_.push_back(relative.generic_string());
}

std::vector<std::string> OutputTree::files() const {
  std::vector<std::string> out = files_;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void OutputTree::write_manifest(RunManifest manifest) {
  files_.push_back("manifest.json");
  manifest.outputs = files();
  write_file_atomic(root_ / "manifest.json", manifest_to_json(manifest));
}

void write_curves(OutputTree& out, const std::vector<SequenceResult>& results) {
  std::vector<ResolutionCurve> curves;
  for (const auto& r : results) curves.insert(curves.end(), r.curves.begin(), r.curves.end());
  out.write("curves.csv", curves_to_csv(curves));
}

void write_fronts(OutputTree& out, const std::vector<SequenceResult>& results,
                  const std::vector<int>& resolutions) {
  std::vector<ParetoFront> fronts;
  std::vector<SequenceComposition> composition;
  for (const auto& r : results) {
    fronts.push_back(r.rq_front);
    fronts.push_back(r.eq_front);
    composition.push_back({r.sequence_id, front_composition(r.rq_front)});
    composition.push_back({r.sequence_id, front_composition(r.eq_front)});
  }
  out.write("fronts.csv", fronts_to_csv(fronts));
  out.write("plot_fronts.csv", fronts_plot_csv(fronts));
  out.write("composition.csv", composition_to_csv(composition));
  out.write("composition_mean.csv", composition_mean_csv(composition, resolutions));
}

void write_ladders(OutputTree& out, const std::vector<SequenceResult>& results) {
  std::vector<Ladder> all;
  for (const auto& r : results) {
    for (const auto& l : r.ladders) {
      out.write(fs::path("ladders") / r.sequence_id / (ladder_kind(l.method, l.source_domain) + ".json"),
                ladder_to_json(l));
      all.push_back(l);
    }
  }
  out.write("ladders.csv", ladders_to_csv(all));
  out.write("plot_ladders.csv", ladders_plot_csv(all));
}

LadderSet load_ladder_dir(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorKind::IoError, "'" + dir.string() + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  LadderSet set;
  for (const auto& path : files) {
    const std::string text = read_text_file(path);
    json probe = json::parse(text, nullptr, false);
    if (probe.is_discarded() || !probe.is_object() || !probe.contains("rungs")) continue;
    Ladder ladder = ladder_from_json(text);
    auto& bucket = set[ladder_kind(ladder.method, ladder.source_domain)];
    const std::string id = ladder.sequence_id;
    if (!bucket.emplace(id, std::move(ladder)).second) {
      throw Error(ErrorKind::DuplicateKey, "ladder for " + id + " appears twice under '" + dir.string() + "'");
    }
  }
  return set;
}

LadderSet to_ladder_set(const std::vector<SequenceResult>& results) {
  LadderSet set;
  for (const auto& r : results) {
    for (const auto& l : r.ladders) set[ladder_kind(l.method, l.source_domain)].emplace(r.sequence_id, l);
  }
  return set;
}

EvalOutputs evaluate_ladders(const LadderSet& proposed, const LadderSet* reference) {
  static const std::map<std::string, Ladder> kEmpty;
  const auto kind_of = [](const LadderSet& set, const std::string& kind) -> const std::map<std::string, Ladder>& {
    const auto it = set.find(kind);
    return it == set.end() ? kEmpty : it->second;
  };

  EvalOutputs out;
  if (reference == nullptr) {
    for (LadderMethod method : {LadderMethod::RateDriven, LadderMethod::QualityDriven}) {
      const auto ref_kind = ladder_kind(method, DomainTag::RQ);
      const auto prop_kind = ladder_kind(method, DomainTag::EQ);
      out.rows.push_back({std::string(to_string(method)) + "_EQ-PF", ref_kind, prop_kind,
                          corpus_eval(kind_of(proposed, ref_kind), kind_of(proposed, prop_kind))});
    }
  } else {
    if (proposed.empty()) throw Error(ErrorKind::EmptyIntersection, "no ladders to evaluate");
    for (const auto& [kind, ladders] : proposed) {
      out.rows.push_back({kind, kind, kind, corpus_eval(kind_of(*reference, kind), ladders)});
    }
  }
  for (const auto& [kind, ladders] : proposed) {
    std::vector<Ladder> list;
    for (const auto& [id, l] : ladders) list.push_back(l);
    if (!list.empty()) out.mean_ladders.push_back(mean_ladder(list));
  }
  return out;
}

void write_eval(OutputTree& out, const EvalOutputs& eval, const LadderConfig& config, bool against_reference,
                const fs::path& prefix) {
  const auto mode = against_reference ? "same-kind vs reference directory" : "EQ-PF vs RQ-PF";
  out.write(prefix / "table.csv", eval_table_csv(eval.rows));
  out.write(prefix / "eval_report.json", eval_report_json(eval.rows, config, mode));
  out.write(prefix / "mean_ladders.csv", mean_ladders_csv(eval.mean_ladders));
  out.write(prefix / "plot_mean_ladders.csv", mean_ladders_plot_csv(eval.mean_ladders));
}

}  // namespace eqladder
