#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "eqladder/error.hpp"
#include "eqladder/ingest.hpp"
#include "test_support.hpp"

using namespace eqladder;
using eqladder::testing::grid_csv;

namespace {

const std::vector<int> kHeights{720, 1080, 2160};
const std::vector<int> kCrfs{10, 20, 30, 40, 50};

ErrorKind kind_of_failure(const std::string& csv) {
  try {
    parse_corpus_csv(csv);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::IoError;
}

std::string drop_line(const std::string& text, const std::string& prefix) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto end = text.find('\n', pos);
    const auto line = text.substr(pos, end - pos);
    if (line.rfind(prefix, 0) != 0) out += line + '\n';
    pos = end + 1;
  }
  return out;
}

}  // namespace

TEST(Ingest, CompleteGridLoads) {
  const auto csv = grid_csv({"seqA", "seqB", "seqC"}, kHeights, kCrfs);
  const Corpus c = parse_corpus_csv(csv);
  EXPECT_EQ(c.sequences.size(), 3u);
  EXPECT_EQ(c.point_count(), 45u);
  EXPECT_EQ(c.resolutions, (std::vector<int>{720, 1080, 2160}));
  EXPECT_EQ(c.crf_grid, (std::vector<double>{10, 20, 30, 40, 50}));
  const auto& a = c.sequences.at("seqA");
  EXPECT_EQ(a.front().resolution_height, 720);
  EXPECT_EQ(a.front().crf, 10);
  EXPECT_EQ(a.back().resolution_height, 2160);
  EXPECT_EQ(a.back().crf, 50);
}

TEST(Ingest, MissingRowNamesTheHole) {
  const auto csv = drop_line(grid_csv({"seqA", "seqB", "seqC"}, kHeights, kCrfs), "seqA,720,50,");
  try {
    parse_corpus_csv(csv);
    FAIL() << "expected IncompleteGrid";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IncompleteGrid);
    EXPECT_NE(std::string(e.what()).find("(seqA, 720, 50)"), std::string::npos) << e.what();
  }
}

TEST(Ingest, ZeroBitrateRejected) {
  auto csv = grid_csv({"seqA"}, kHeights, kCrfs);
  csv += "seqB,720,10,0,90,10\n";
  EXPECT_EQ(kind_of_failure(csv), ErrorKind::NonPositiveValue);
}

TEST(Ingest, NegativeEnergyRejected) {
  const auto csv = eqladder::testing::csv_header() + "s,720,10,100,90,-1\n";
  EXPECT_EQ(kind_of_failure(csv), ErrorKind::NonPositiveValue);
}

TEST(Ingest, DuplicateKeyRejected) {
  auto csv = grid_csv({"seqA"}, kHeights, kCrfs);
  csv += "seqA,1080,30,100,80,10\n";
  EXPECT_EQ(kind_of_failure(csv), ErrorKind::DuplicateKey);
}

TEST(Ingest, MalformedInputs) {
  const auto h = eqladder::testing::csv_header();
  EXPECT_EQ(kind_of_failure(h + "s,720,10,abc,90,10\n"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of_failure(h + "s,720,10,100,90\n"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of_failure(h + "s,720.5,10,100,90,10\n"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of_failure(h + "s,720,10,100,101,10\n"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of_failure(h + "s,720,10,nan,90,10\n"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of_failure(h + "a/b,720,10,100,90,10\n"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of_failure("sequence_id,crf,bitrate_kbps,vmaf,decode_energy_j\n"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of_failure(""), ErrorKind::ParseError);
  EXPECT_EQ(kind_of_failure(h), ErrorKind::EmptyCorpus);
}

TEST(Ingest, UnknownColumnsIgnoredWithWarning) {
  std::string csv = "note,sequence_id,resolution_height,crf,bitrate_kbps,vmaf,decode_energy_j\n";
  for (int crf : kCrfs) {
    csv += "x,s,720," + std::to_string(crf) + ',' + std::to_string(1000 - crf) + ",80,10\n";
  }
  Warnings w;
  const Corpus c = parse_corpus_csv(csv, &w);
  EXPECT_EQ(c.point_count(), 5u);
  ASSERT_FALSE(w.empty());
  EXPECT_NE(w.front().find("note"), std::string::npos);
}

TEST(Ingest, QualityRisingWithCrfIsOnlyAWarning) {
  std::string csv = eqladder::testing::csv_header();
  const double vmaf[] = {90, 80, 82, 70, 60};
  for (int i = 0; i < 5; ++i) {
    csv += "s,720," + std::to_string(kCrfs[i]) + ',' + std::to_string(1000 - 100 * i) + ',' +
           std::to_string(vmaf[i]) + ",10\n";
  }
  Warnings w;
  const Corpus c = parse_corpus_csv(csv, &w);
  EXPECT_EQ(c.point_count(), 5u);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_NE(w.front().find("quality increases"), std::string::npos);
}

TEST(Ingest, OptionalEncodeEnergy) {
  std::string csv = "sequence_id,resolution_height,crf,bitrate_kbps,vmaf,decode_energy_j,encode_energy_j\n";
  for (int crf : kCrfs) {
    csv += "s,720," + std::to_string(crf) + ",100,80,10," + (crf == 30 ? "" : "55.5") + "\n";
  }
  const Corpus c = parse_corpus_csv(csv);
  const auto& pts = c.sequences.at("s");
  EXPECT_EQ(pts[0].encode_energy, 55.5);
  EXPECT_FALSE(pts[2].encode_energy.has_value());
}

TEST(Ingest, JsonMatchesCsv) {
  const auto csv = grid_csv({"seqA", "seqB"}, kHeights, kCrfs);
  const Corpus from_csv = parse_corpus_csv(csv);
  const Corpus from_json = parse_corpus_json(corpus_to_json(from_csv));
  EXPECT_EQ(from_csv, from_json);
}

TEST(Ingest, JsonErrors) {
  EXPECT_THROW(parse_corpus_json("{}"), Error);
  EXPECT_THROW(parse_corpus_json("[{\"sequence_id\": \"s\"}]"), Error);
  EXPECT_THROW(parse_corpus_json("[1,2"), Error);
}

TEST(Ingest, LoadMissingFileIsIoError) {
  try {
    load_corpus("/nonexistent/corpus.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IoError);
  }
}

TEST(Ingest, LoadsFixtureFile) {
  const Corpus c = load_corpus(std::string(EQLADDER_TEST_DATA) + "/fixture_corpus.csv");
  EXPECT_EQ(c.sequences.size(), 3u);
  EXPECT_EQ(c.resolutions.size(), 3u);
}

TEST(CorpusSummary, SinglePointPerResolution) {
  std::string csv = eqladder::testing::csv_header();
  csv += "s,720,30,500,60,10\ns,1080,30,900,70,30\ns,2160,30,2000,80,90\n";
  const auto summary = corpus_summary(parse_corpus_csv(csv));
  ASSERT_EQ(summary.per_resolution.size(), 3u);
  for (const auto& r : summary.per_resolution) {
    EXPECT_EQ(r.count, 1u);
    EXPECT_EQ(r.bitrate.min, r.bitrate.max);
    EXPECT_EQ(r.bitrate.min, r.bitrate.mean);
    EXPECT_EQ(r.quality.min, r.quality.mean);
    EXPECT_EQ(r.decode_energy.max, r.decode_energy.mean);
  }
  EXPECT_DOUBLE_EQ(summary.per_resolution[0].log10_bitrate.min, std::log10(500.0));
  EXPECT_DOUBLE_EQ(summary.per_resolution[2].log10_energy.max, std::log10(90.0));
}

TEST(CorpusSummary, ThreeGroupsAndEmpty) {
  const auto summary = corpus_summary(parse_corpus_csv(grid_csv({"a", "b"}, kHeights, kCrfs)));
  EXPECT_EQ(summary.per_resolution.size(), 3u);
  EXPECT_EQ(summary.point_count, 30u);
  EXPECT_EQ(summary.per_resolution[1].count, 10u);
  try {
    corpus_summary(Corpus{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyCorpus);
  }
}
