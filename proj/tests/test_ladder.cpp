#include <gtest/gtest.h>

#include "eqladder/error.hpp"
#include "eqladder/interp.hpp"
#include "eqladder/ladder.hpp"
#include "eqladder/synth.hpp"
#include "test_support.hpp"

using namespace eqladder;
using eqladder::testing::front_of;
using eqladder::testing::sp;

namespace {

// Front with one point per given bitrate, quality rising with rate.
ParetoFront rate_front(const std::vector<double>& rates) {
  std::vector<SampledPoint> pts;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    pts.push_back(sp(rates[i], 40.0 + static_cast<double>(i), 10.0 + static_cast<double>(i)));
  }
  return front_of(DomainTag::RQ, pts);
}

}  // namespace

TEST(Ladder, Targets) {
  const LadderConfig cfg;
  EXPECT_EQ(rate_targets(cfg),
            (std::vector<double>{500, 1000, 2000, 4000, 8000, 16000, 32000, 64000, 128000}));
  EXPECT_EQ(quality_targets(cfg), (std::vector<double>{50, 60, 70, 80, 90, 100}));
  LadderConfig odd;
  odd.rate_max = 127999;
  EXPECT_EQ(rate_targets(odd).size(), 8u);
}

TEST(Ladder, ExactHits) {
  const auto ladder = rate_driven_ladder(rate_front({500, 1000, 2000}), {});
  ASSERT_EQ(ladder.rungs.size(), 9u);
  for (int i = 0; i < 3; ++i) {
    ASSERT_EQ(ladder.rungs[i].status, RungStatus::Filled);
    EXPECT_EQ(ladder.rungs[i].chosen->bitrate, ladder.rungs[i].target);
    EXPECT_EQ(ladder.rungs[i].index, i + 1);
  }
  for (int i = 3; i < 9; ++i) EXPECT_EQ(ladder.rungs[i].status, RungStatus::Skipped);
  EXPECT_EQ(ladder.filled_count(), 3u);
}

TEST(Ladder, LowestBitrateInBand) {
  const auto ladder = rate_driven_ladder(rate_front({940, 1050}), {});
  ASSERT_EQ(ladder.rungs[1].status, RungStatus::Filled);
  EXPECT_EQ(ladder.rungs[1].chosen->bitrate, 940.0);
}

TEST(Ladder, OutOfBandSkipped) {
  const auto ladder = rate_driven_ladder(rate_front({1200}), {});
  EXPECT_EQ(ladder.rungs[1].status, RungStatus::Skipped);
  EXPECT_EQ(ladder.filled_count(), 0u);
  // Band edges are inclusive.
  const auto edges = rate_driven_ladder(rate_front({900, 2200}), {});
  EXPECT_EQ(edges.rungs[1].chosen->bitrate, 900.0);
  EXPECT_EQ(edges.rungs[2].chosen->bitrate, 2200.0);
}

TEST(Ladder, RateNearestFallback) {
  LadderConfig cfg;
  cfg.fallback = FallbackMode::Nearest;
  const auto ladder = rate_driven_ladder(rate_front({1200, 1300, 1500}), cfg);
  ASSERT_EQ(ladder.rungs[1].status, RungStatus::Filled);
  EXPECT_EQ(ladder.rungs[1].chosen->bitrate, 1200.0);
  // 1500 falls in the catchment of rung 3, [2000/sqrt(2), 2000*sqrt(2)).
  ASSERT_EQ(ladder.rungs[2].status, RungStatus::Filled);
  EXPECT_EQ(ladder.rungs[2].chosen->bitrate, 1500.0);
  EXPECT_EQ(ladder.rungs[0].status, RungStatus::Skipped);
}

TEST(Ladder, QualitySingleCandidate) {
  const auto front = front_of(DomainTag::EQ, {sp(100, 30, 5), sp(400, 58, 8), sp(900, 67, 20)});
  const auto ladder = quality_driven_ladder(front, {});
  ASSERT_EQ(ladder.rungs.size(), 6u);
  ASSERT_EQ(ladder.rungs[1].status, RungStatus::Filled);
  EXPECT_EQ(ladder.rungs[1].chosen->quality, 58.0);
  EXPECT_EQ(ladder.rungs[0].status, RungStatus::Skipped);
  EXPECT_EQ(ladder.rungs[5].status, RungStatus::Skipped);
}

TEST(Ladder, QualityMinimalCostOnFrontAxis) {
  // Energy is the cost axis of an EQ front.
  const auto front = front_of(DomainTag::EQ, {sp(5000, 78, 10), sp(900, 82, 14)});
  const auto ladder = quality_driven_ladder(front, {});
  ASSERT_EQ(ladder.rungs[3].status, RungStatus::Filled);
  EXPECT_EQ(ladder.rungs[3].chosen->decode_energy, 10.0);
  EXPECT_EQ(ladder.rungs[3].target, 80.0);
}

TEST(Ladder, BoundaryPointUsedOnce) {
  // VMAF 55 lies in both the 50 and 60 bands.
  const auto front = front_of(DomainTag::RQ, {sp(100, 55, 1)});
  const auto ladder = quality_driven_ladder(front, {});
  EXPECT_EQ(ladder.rungs[0].status, RungStatus::Filled);
  EXPECT_EQ(ladder.rungs[1].status, RungStatus::Skipped);
  EXPECT_EQ(ladder.filled_count(), 1u);
}

TEST(Ladder, QualityNearestFallback) {
  LadderConfig cfg;
  cfg.fallback = FallbackMode::Nearest;
  cfg.quality_band = 1.0;
  const auto front = front_of(DomainTag::RQ, {sp(100, 53, 1), sp(200, 63.5, 2), sp(300, 64.9, 3)});
  const auto ladder = quality_driven_ladder(front, cfg);
  EXPECT_EQ(ladder.rungs[0].chosen->quality, 53.0);
  EXPECT_EQ(ladder.rungs[1].chosen->quality, 63.5);
  EXPECT_EQ(ladder.rungs[2].status, RungStatus::Skipped);
}

TEST(Ladder, InvalidConfig) {
  std::vector<LadderConfig> bad(6);
  bad[0].rate_min = 0;
  bad[1].rate_max = 400;
  bad[2].rate_band = 1.0;
  bad[3].quality_step = 0;
  bad[4].quality_max = 40;
  bad[5].quality_band = -1;
  for (const auto& cfg : bad) {
    try {
      rate_driven_ladder(rate_front({1000}), cfg);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidConfig);
    }
  }
  EXPECT_THROW(fallback_from_string("closest"), Error);
}

TEST(Ladder, ToDomain) {
  const auto empty = rate_driven_ladder(rate_front({1200}), {});
  EXPECT_TRUE(ladder_to_domain(empty, DomainTag::RQ).empty());

  const auto ladder = rate_driven_ladder(rate_front({500, 1000, 2000, 4100}), {});
  const auto rq = ladder_to_domain(ladder, DomainTag::RQ);
  ASSERT_EQ(rq.size(), 4u);
  for (std::size_t i = 1; i < rq.size(); ++i) EXPECT_LT(rq[i - 1].first, rq[i].first);
  const auto eq = ladder_to_domain(ladder, DomainTag::EQ);
  EXPECT_EQ(eq[3].first, 13.0);
  EXPECT_EQ(eq[3].second, 43.0);
}

TEST(Ladder, CrossedRqLadderDropsEnergy) {
  const auto spec = crossed_synth_spec();
  const auto corpus = make_synthetic_corpus(spec);
  int drops = 0;
  for (const auto& [id, points] : corpus.sequences) {
    const auto front = extract_front(sample_sequence(id, points), DomainTag::RQ);
    const auto view = ladder_to_domain(rate_driven_ladder(front, {}), DomainTag::EQ);
    for (std::size_t i = 1; i < view.size(); ++i) {
      if (view[i].first < view[i - 1].first && view[i].second > view[i - 1].second) {
        ++drops;
        break;
      }
    }
  }
  EXPECT_GT(drops, 0);
}

TEST(Ladder, RungsHoldDistinctPointsInOrder) {
  const auto corpus = make_synthetic_corpus(default_synth_spec());
  for (const auto& [id, points] : corpus.sequences) {
    const auto curves = sample_sequence(id, points);
    for (auto d : {DomainTag::RQ, DomainTag::EQ}) {
      const auto front = extract_front(curves, d);
      for (const auto& ladder : {rate_driven_ladder(front, {}), quality_driven_ladder(front, {})}) {
        const auto pts = ladder_to_domain(ladder, d);
        for (std::size_t i = 1; i < pts.size(); ++i) {
          EXPECT_LT(pts[i - 1].first, pts[i].first);
          EXPECT_LT(pts[i - 1].second, pts[i].second);
        }
        EXPECT_EQ(ladder, ladder.method == LadderMethod::RateDriven ? rate_driven_ladder(front, {})
                                                                    : quality_driven_ladder(front, {}));
      }
    }
  }
}
