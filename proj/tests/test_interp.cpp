#include <gtest/gtest.h>

#include <cmath>

#include "eqladder/error.hpp"
#include "eqladder/ingest.hpp"
#include "eqladder/interp.hpp"
#include "eqladder/synth.hpp"
#include "test_support.hpp"

using namespace eqladder;

namespace {

std::vector<MeasurementPoint> column(std::vector<double> rate, std::vector<double> vmaf,
                                     std::vector<double> energy, std::vector<double> crf = {10, 20, 30, 40, 50}) {
  std::vector<MeasurementPoint> pts;
  for (std::size_t i = 0; i < crf.size(); ++i) {
    pts.push_back(MeasurementPoint{"s", 1080, crf[i], rate[i], vmaf[i], energy[i], std::nullopt});
  }
  return pts;
}

Corpus grid_corpus() {
  return parse_corpus_csv(eqladder::testing::grid_csv({"a", "b"}, {720, 1080, 2160}, {10, 20, 30, 40, 50}));
}

}  // namespace

TEST(Interp, StepEqualToSpacingGivesKnotsOnly) {
  const auto corpus = grid_corpus();
  const auto curves = sample_curves(corpus, {10.0, InterpSpace::Linear});
  ASSERT_EQ(curves.size(), 6u);
  for (const auto& c : curves) {
    ASSERT_EQ(c.samples.size(), 5u);
    const auto& pts = corpus.sequences.at(c.sequence_id);
    std::size_t k = 0;
    for (const auto& p : pts) {
      if (p.resolution_height != c.resolution_height) continue;
      EXPECT_TRUE(c.samples[k].is_knot);
      EXPECT_EQ(c.samples[k].crf, p.crf);
      EXPECT_EQ(c.samples[k].bitrate, p.bitrate);
      EXPECT_EQ(c.samples[k].quality, p.quality);
      EXPECT_EQ(c.samples[k].decode_energy, p.decode_energy);
      ++k;
    }
  }
}

TEST(Interp, FineStepCount) {
  const auto curves = sample_curves(grid_corpus());
  for (const auto& c : curves) {
    ASSERT_EQ(c.samples.size(), 401u);
    EXPECT_EQ(c.samples.front().crf, 10.0);
    EXPECT_EQ(c.samples.back().crf, 50.0);
    int knots = 0;
    for (std::size_t i = 0; i < c.samples.size(); ++i) {
      knots += c.samples[i].is_knot;
      EXPECT_NEAR(c.samples[i].crf, 10.0 + 0.1 * static_cast<double>(i), 1e-9);
      if (i > 0) {
        EXPECT_LT(c.samples[i - 1].crf, c.samples[i].crf);
      }
    }
    EXPECT_EQ(knots, 5);
  }
}

TEST(Interp, KnotsEqualClosedForm) {
  auto spec = default_synth_spec();
  spec.sequence_count = 1;
  for (auto& m : spec.resolutions) m.halving_crf = 10.0;
  const auto corpus = make_synthetic_corpus(spec);
  const auto curves = sample_curves(corpus);
  const double c = sequence_complexity(spec, 0);
  for (const auto& curve : curves) {
    const auto model = std::find_if(spec.resolutions.begin(), spec.resolutions.end(),
                                    [&](const ResolutionModel& m) { return m.height == curve.resolution_height; });
    ASSERT_NE(model, spec.resolutions.end());
    for (const auto& s : curve.samples) {
      if (!s.is_knot) continue;
      EXPECT_EQ(s.bitrate, c * model->base_rate * std::exp2(-s.crf / 10.0));
    }
  }
}

TEST(Interp, NonAlignedGridKeepsKnots) {
  const auto grid = sampling_grid({10, 20, 30, 40, 50}, 3.0);
  // 10,13,...,49 (40 among them) plus knots 20, 30 and 50.
  EXPECT_EQ(grid.size(), 14u + 3u);
  for (double k : {10.0, 20.0, 30.0, 40.0, 50.0}) {
    EXPECT_NE(std::find(grid.begin(), grid.end(), k), grid.end()) << k;
  }
  EXPECT_TRUE(std::is_sorted(grid.begin(), grid.end()));
}

TEST(Interp, InvalidStep) {
  for (double step : {0.0, -1.0, 40.5, std::nan("")}) {
    try {
      sampling_grid({10, 20, 30, 40, 50}, step);
      FAIL() << step;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidConfig);
    }
  }
  EXPECT_EQ(sampling_grid({10, 20, 30, 40, 50}, 40.0).size(), 5u);
}

TEST(Interp, QualityClampedToScale) {
  // Interpolant overshoots 100 between crf 30 and 50.
  const auto curves = sample_sequence("s", column({5, 4, 3, 2, 1}, {30, 80, 99, 100, 60}, {5, 4, 3, 2, 1}));
  double top = 0;
  for (const auto& s : curves[0].samples) {
    EXPECT_GE(s.quality, 0.0);
    EXPECT_LE(s.quality, 100.0);
    top = std::max(top, s.quality);
  }
  EXPECT_EQ(top, 100.0);
}

TEST(Interp, PositivityFloorWarns) {
  // Interpolated bitrate dips below zero between crf 30 and 40.
  Warnings warnings;
  const auto curves = sample_sequence(
      "s", column({1000, 100, 0.001, 0.002, 0.1}, {90, 80, 70, 60, 50}, {5, 4, 3, 2, 1}), {}, &warnings);
  bool floored = false;
  for (const auto& s : curves[0].samples) {
    EXPECT_GE(s.bitrate, kPositivityFloor);
    floored = floored || s.bitrate == kPositivityFloor;
  }
  EXPECT_TRUE(floored);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("positivity floor"), std::string::npos);
}

TEST(Interp, Log10SpaceReproducesExponential) {
  // Rate halving every 10 CRF is linear in log space, so Akima reproduces it.
  std::vector<double> rate;
  for (double c : {10.0, 20.0, 30.0, 40.0, 50.0}) rate.push_back(64000.0 * std::exp2(-c / 10.0));
  const auto curves =
      sample_sequence("s", column(rate, {90, 80, 70, 60, 50}, {50, 40, 30, 20, 10}), {0.5, InterpSpace::Log10});
  for (const auto& s : curves[0].samples) {
    const double expected = 64000.0 * std::exp2(-s.crf / 10.0);
    EXPECT_NEAR(s.bitrate, expected, 1e-9 * expected) << s.crf;
    EXPECT_GT(s.decode_energy, 0.0);
  }
}

TEST(Interp, CurvesOrderedBySequenceThenHeight) {
  const auto curves = sample_curves(grid_corpus(), {1.0, InterpSpace::Linear});
  std::vector<std::pair<std::string, int>> order;
  for (const auto& c : curves) order.emplace_back(c.sequence_id, c.resolution_height);
  EXPECT_TRUE(std::is_sorted(order.begin(), order.end()));
}
