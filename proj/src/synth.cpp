#include "eqladder/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include "eqladder/error.hpp"
#include "eqladder/ingest.hpp"
#include "json.hpp"

namespace eqladder {
namespace {

using nlohmann::json;

// Uniform in [-1, 1) from the top 53 bits; independent of the standard
// library's distribution implementations.
double symmetric_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

std::string sequence_name(const SynthSpec& spec, int index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03d", index);
  return spec.id_prefix + "_" + buf;
}

}  // namespace

void SynthSpec::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidSpec, what); };
  if (sequence_count < 1) fail("sequence_count must be >= 1");
  if (resolutions.empty()) fail("at least one resolution model is required");
  std::set<int> heights;
  for (const auto& r : resolutions) {
    if (r.height <= 0) fail("resolution height must be > 0");
    if (!heights.insert(r.height).second) fail("duplicate resolution " + std::to_string(r.height));
    if (!(r.base_rate > 0.0) || !(r.halving_crf > 0.0) || !(r.quality_ceiling > 0.0) ||
        !(r.quality_slope > 0.0) || !(r.energy_offset > 0.0)) {
      fail("resolution " + std::to_string(r.height) + ": model parameters must be positive");
    }
    if (r.quality_ceiling > 100.0) fail("quality_ceiling must be <= 100");
    if (!std::isfinite(r.quality_midpoint)) fail("quality_midpoint must be finite");
  }
  if (crf_grid.size() < 5) fail("crf_grid needs at least 5 values");
  for (std::size_t i = 1; i < crf_grid.size(); ++i) {
    if (!(crf_grid[i] > crf_grid[i - 1])) fail("crf_grid must be strictly increasing");
  }
  if (!(base_energy > 0.0)) fail("base_energy must be > 0");
  if (!(energy_per_kbps >= 0.0)) fail("energy_per_kbps must be >= 0");
  if (!(complexity_spread >= 0.0) || !std::isfinite(complexity_spread)) {
    fail("complexity_spread must be >= 0");
  }
  if (!(noise >= 0.0 && noise < 1.0)) fail("noise must be in [0, 1)");
  if (id_prefix.empty() || id_prefix.find_first_of("/\\,\"\n") != std::string::npos) {
    fail("id_prefix must be non-empty and free of separators");
  }
}

SynthSpec default_synth_spec() {
  SynthSpec spec;
  //            height  base_rate  halving  ceiling slope  mid   energy
  spec.resolutions = {{2160, 317480.0, 6.0, 99.0, 1.9, 3.05, 9.0},
                      {1080, 111118.0, 6.0, 93.0, 2.2, 3.00, 3.0},
                      {720, 57146.0, 6.0, 85.0, 2.4, 2.90, 1.0}};
  return spec;
}

SynthSpec crossed_synth_spec() {
  SynthSpec spec = default_synth_spec();
  spec.id_prefix = "crossed";
  spec.resolutions = {{2160, 317480.0, 6.0, 99.0, 1.0, 2.60, 9.0},
                      {1080, 111118.0, 6.0, 94.0, 4.0, 3.30, 3.0},
                      {720, 57146.0, 6.0, 80.0, 2.6, 2.90, 1.0}};
  return spec;
}

double sequence_complexity(const SynthSpec& spec, int sequence_index) {
  const double u = spec.sequence_count == 1
                       ? 0.5
                       : static_cast<double>(sequence_index) / (spec.sequence_count - 1);
  return std::exp2(spec.complexity_spread * (u - 0.5));
}

MeasurementPoint model_point(const SynthSpec& spec, int sequence_index, const ResolutionModel& model,
                             double crf) {
  const double c = sequence_complexity(spec, sequence_index);
  MeasurementPoint p;
  p.sequence_id = sequence_name(spec, sequence_index);
  p.resolution_height = model.height;
  p.crf = crf;
  p.bitrate = c * model.base_rate * std::exp2(-crf / model.halving_crf);
  const double midpoint = model.quality_midpoint + 0.5 * std::log10(c);
  p.quality = model.quality_ceiling /
              (1.0 + std::exp(-model.quality_slope * (std::log10(p.bitrate) - midpoint)));
  p.decode_energy = spec.base_energy * model.energy_offset + spec.energy_per_kbps * p.bitrate;
  return p;
}

Corpus make_synthetic_corpus(const SynthSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.rng_seed);
  std::vector<MeasurementPoint> points;
  for (int s = 0; s < spec.sequence_count; ++s) {
    for (const auto& model : spec.resolutions) {
      for (double crf : spec.crf_grid) {
        MeasurementPoint p = model_point(spec, s, model, crf);
        if (spec.noise > 0.0) {
          p.bitrate *= 1.0 + spec.noise * symmetric_unit(rng);
          p.quality = std::clamp(p.quality * (1.0 + spec.noise * symmetric_unit(rng)), 0.0, 100.0);
          p.decode_energy *= 1.0 + spec.noise * symmetric_unit(rng);
        }
        points.push_back(std::move(p));
      }
    }
  }
  return build_corpus(std::move(points));
}

SynthSpec synth_spec_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidSpec, std::string("invalid synth spec JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::InvalidSpec, "synth spec must be a JSON object");

  SynthSpec spec = default_synth_spec();
  try {
    if (const auto preset = doc.value("preset", std::string("default")); preset == "crossed") {
      spec = crossed_synth_spec();
    } else if (preset != "default") {
      throw Error(ErrorKind::InvalidSpec, "unknown preset '" + preset + "'");
    }
    for (const auto& [key, value] : doc.items()) {
      if (key == "preset") continue;
      if (key == "sequence_count") spec.sequence_count = value.get<int>();
      else if (key == "crf_grid") spec.crf_grid = value.get<std::vector<double>>();
      else if (key == "base_energy") spec.base_energy = value.get<double>();
      else if (key == "energy_per_kbps") spec.energy_per_kbps = value.get<double>();
      else if (key == "complexity_spread") spec.complexity_spread = value.get<double>();
      else if (key == "noise") spec.noise = value.get<double>();
      else if (key == "rng_seed") spec.rng_seed = value.get<std::uint64_t>();
      else if (key == "id_prefix") spec.id_prefix = value.get<std::string>();
      else if (key == "resolutions") {
        spec.resolutions.clear();
        for (const auto& r : value) {
          ResolutionModel m;
          m.height = r.at("height").get<int>();
          m.base_rate = r.at("base_rate").get<double>();
          m.halving_crf = r.value("halving_crf", m.halving_crf);
          m.quality_ceiling = r.value("quality_ceiling", m.quality_ceiling);
          m.quality_slope = r.value("quality_slope", m.quality_slope);
          m.quality_midpoint = r.value("quality_midpoint", m.quality_midpoint);
          m.energy_offset = r.value("energy_offset", m.energy_offset);
          spec.resolutions.push_back(m);
        }
      } else {
        throw Error(ErrorKind::InvalidSpec, "unknown synth spec key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidSpec, std::string("malformed synth spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

std::string synth_spec_to_json(const SynthSpec& spec) {
  json res = json::array();
  for (const auto& m : spec.resolutions) {
    res.push_back({{"height", m.height},
                   {"base_rate", m.base_rate},
                   {"halving_crf", m.halving_crf},
                   {"quality_ceiling", m.quality_ceiling},
                   {"quality_slope", m.quality_slope},
                   {"quality_midpoint", m.quality_midpoint},
                   {"energy_offset", m.energy_offset}});
  }
  json doc = {{"sequence_count", spec.sequence_count},
              {"resolutions", res},
              {"crf_grid", spec.crf_grid},
              {"base_energy", spec.base_energy},
              {"energy_per_kbps", spec.energy_per_kbps},
              {"complexity_spread", spec.complexity_spread},
              {"noise", spec.noise},
              {"rng_seed", spec.rng_seed},
              {"id_prefix", spec.id_prefix}};
  return doc.dump(2) + "\n";
}

}  // namespace eqladder
