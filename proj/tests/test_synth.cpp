#include <gtest/gtest.h>

#include <cmath>

#include "eqladder/error.hpp"
#include "eqladder/ingest.hpp"
#include "eqladder/synth.hpp"

using namespace eqladder;

namespace {

const ResolutionModel& model_for(const SynthSpec& spec, int height) {
  for (const auto& m : spec.resolutions) {
    if (m.height == height) return m;
  }
  throw std::logic_error("no model");
}

}  // namespace

TEST(Synth, ClosedFormOneSequence) {
  auto spec = default_synth_spec();
  spec.sequence_count = 1;
  const auto corpus = make_synthetic_corpus(spec);
  ASSERT_EQ(corpus.sequences.size(), 1u);
  const auto& [id, points] = *corpus.sequences.begin();
  EXPECT_EQ(id, "synth_000");
  ASSERT_EQ(points.size(), 15u);
  for (const auto& p : points) {
    const auto& m = model_for(spec, p.resolution_height);
    // One sequence has complexity 1.
    const double rate = m.base_rate * std::pow(2.0, -p.crf / m.halving_crf);
    const double q = m.quality_ceiling / (1.0 + std::exp(-m.quality_slope * (std::log10(rate) - m.quality_midpoint)));
    const double e = spec.base_energy * m.energy_offset + spec.energy_per_kbps * rate;
    EXPECT_NEAR(p.bitrate, rate, 1e-12 * rate);
    EXPECT_NEAR(p.quality, q, 1e-12 * q);
    EXPECT_NEAR(p.decode_energy, e, 1e-12 * e);
    EXPECT_FALSE(p.encode_energy.has_value());
  }
}

TEST(Synth, SeedReproducible) {
  auto spec = default_synth_spec();
  spec.noise = 0.05;
  spec.rng_seed = 99;
  EXPECT_EQ(make_synthetic_corpus(spec), make_synthetic_corpus(spec));
  auto other = spec;
  other.rng_seed = 100;
  EXPECT_NE(make_synthetic_corpus(spec), make_synthetic_corpus(other));
  spec.noise = 0.0;
  other.noise = 0.0;
  EXPECT_EQ(make_synthetic_corpus(spec), make_synthetic_corpus(other));
}

TEST(Synth, NoiseStaysWithinAmplitude) {
  auto clean = default_synth_spec();
  auto noisy = clean;
  noisy.noise = 0.1;
  const auto a = make_synthetic_corpus(clean);
  const auto b = make_synthetic_corpus(noisy);
  for (const auto& [id, pts] : a.sequences) {
    const auto& other = b.sequences.at(id);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      EXPECT_LE(std::abs(other[i].bitrate / pts[i].bitrate - 1.0), 0.1 + 1e-12);
      EXPECT_LE(std::abs(other[i].decode_energy / pts[i].decode_energy - 1.0), 0.1 + 1e-12);
    }
  }
}

TEST(Synth, EnergyRangesDisjointBitratesOverlap) {
  const auto corpus = make_synthetic_corpus(default_synth_spec());
  const auto summary = corpus_summary(corpus);
  ASSERT_EQ(summary.per_resolution.size(), 3u);
  for (std::size_t i = 1; i < 3; ++i) {
    const auto& lo = summary.per_resolution[i - 1];
    const auto& hi = summary.per_resolution[i];
    EXPECT_LT(lo.decode_energy.max, hi.decode_energy.min);
    EXPECT_LT(hi.bitrate.min, lo.bitrate.max);
  }
}

TEST(Synth, SummaryMatchesGenerator) {
  const auto spec = default_synth_spec();
  const auto summary = corpus_summary(make_synthetic_corpus(spec));
  EXPECT_EQ(summary.sequence_count, 3u);
  EXPECT_EQ(summary.point_count, 45u);
  const double c_lo = std::pow(2.0, -0.5 * spec.complexity_spread);
  const double c_hi = std::pow(2.0, 0.5 * spec.complexity_spread);
  for (const auto& r : summary.per_resolution) {
    const auto& m = model_for(spec, r.resolution_height);
    EXPECT_EQ(r.count, 15u);
    const double rate_min = c_lo * m.base_rate * std::pow(2.0, -50.0 / m.halving_crf);
    const double rate_max = c_hi * m.base_rate * std::pow(2.0, -10.0 / m.halving_crf);
    EXPECT_NEAR(r.bitrate.min, rate_min, 1e-9 * rate_min);
    EXPECT_NEAR(r.bitrate.max, rate_max, 1e-9 * rate_max);
    EXPECT_NEAR(r.decode_energy.min, spec.base_energy * m.energy_offset + spec.energy_per_kbps * rate_min, 1e-9);
    EXPECT_NEAR(r.decode_energy.max, spec.base_energy * m.energy_offset + spec.energy_per_kbps * rate_max, 1e-9);
    EXPECT_LT(r.quality.max, m.quality_ceiling);
  }
}

TEST(Synth, InvalidSpec) {
  std::vector<SynthSpec> bad(5, default_synth_spec());
  bad[0].sequence_count = 0;
  bad[1].noise = 1.0;
  bad[2].crf_grid = {10, 20, 30, 40};
  bad[3].resolutions.push_back(bad[3].resolutions.front());
  bad[4].id_prefix = "a/b";
  for (const auto& s : bad) {
    try {
      make_synthetic_corpus(s);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidSpec);
    }
  }
  for (const char* text : {"[1]", "{\"noise\": \"x\"}", "{\"colour\": 1}", "{\"preset\": \"flat\"}", "{"}) {
    try {
      synth_spec_from_json(text);
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidSpec) << text;
    }
  }
}

TEST(Synth, JsonRoundTrip) {
  auto spec = crossed_synth_spec();
  spec.noise = 0.03;
  spec.rng_seed = 12345678901234ULL;
  EXPECT_EQ(synth_spec_from_json(synth_spec_to_json(spec)), spec);
  EXPECT_EQ(synth_spec_from_json("{}"), default_synth_spec());
  EXPECT_EQ(synth_spec_from_json("{\"preset\": \"crossed\"}"), crossed_synth_spec());
  const auto partial = synth_spec_from_json(R"({"sequence_count": 7, "resolutions": [{"height": 480, "base_rate": 9000}]})");
  EXPECT_EQ(partial.sequence_count, 7);
  ASSERT_EQ(partial.resolutions.size(), 1u);
  EXPECT_EQ(partial.resolutions[0].halving_crf, 6.0);
}

TEST(Synth, Complexity) {
  auto spec = default_synth_spec();
  spec.sequence_count = 5;
  EXPECT_EQ(sequence_complexity(spec, 0), std::sqrt(0.5));
  EXPECT_EQ(sequence_complexity(spec, 2), 1.0);
  EXPECT_EQ(sequence_complexity(spec, 4), std::sqrt(2.0));
  spec.sequence_count = 1;
  EXPECT_EQ(sequence_complexity(spec, 0), 1.0);
}
