#include "eqladder/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <tuple>

#include "eqladder/error.hpp"
#include "eqladder/io.hpp"
#include "json.hpp"

namespace eqladder {
namespace {

using nlohmann::json;

constexpr std::string_view kColumns[] = {"sequence_id",   "resolution_height", "crf", "bitrate_kbps",
                                         "vmaf",          "decode_energy_j",   "encode_energy_j"};
constexpr std::size_t kRequiredColumns = 6;

std::string describe(const MeasurementPoint& p) {
  return "(" + p.sequence_id + ", " + std::to_string(p.resolution_height) + ", crf=" +
         format_shortest(p.crf) + ")";
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_number(std::string_view field, std::string_view column, std::size_t line_no) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": column '" +
                                           std::string(column) + "' is not a finite number: '" +
                                           std::string(field) + "'");
  }
  return value;
}

int parse_height(std::string_view field, std::size_t line_no) {
  const double v = parse_number(field, "resolution_height", line_no);
  if (v != std::floor(v) || v < 1 || v > std::numeric_limits<int>::max()) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) +
                                           ": resolution_height must be a positive integer");
  }
  return static_cast<int>(v);
}

void check_sequence_id(const std::string& id, std::size_t line_no) {
  const bool bad = id.empty() || id == "." || id == ".." ||
                   id.find_first_of("/\\,\"\n") != std::string::npos;
  if (bad) {
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line_no) + ": invalid sequence_id '" + id + "'");
  }
}

}  // namespace

CorpusFormat corpus_format_from_string(std::string_view text) {
  if (text == "auto") return CorpusFormat::Auto;
  if (text == "csv") return CorpusFormat::Csv;
  if (text == "json") return CorpusFormat::Json;
  throw Error(ErrorKind::ParseError, "unknown corpus format '" + std::string(text) + "'");
}

Corpus build_corpus(std::vector<MeasurementPoint> points, Warnings* warnings) {
  for (const auto& p : points) {
    if (!(p.bitrate > 0.0)) {
      throw Error(ErrorKind::NonPositiveValue, "bitrate must be > 0 at " + describe(p));
    }
    if (!(p.decode_energy > 0.0)) {
      throw Error(ErrorKind::NonPositiveValue, "decode_energy must be > 0 at " + describe(p));
    }
    if (p.encode_energy && !(*p.encode_energy > 0.0)) {
      throw Error(ErrorKind::NonPositiveValue, "encode_energy must be > 0 at " + describe(p));
    }
    if (p.resolution_height <= 0) {
      throw Error(ErrorKind::NonPositiveValue, "resolution_height must be > 0 at " + describe(p));
    }
    if (!(p.quality >= 0.0 && p.quality <= 100.0)) {
      throw Error(ErrorKind::ParseError, "vmaf outside [0, 100] at " + describe(p));
    }
  }

  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
    return std::tie(a.sequence_id, a.resolution_height, a.crf) <
           std::tie(b.sequence_id, b.resolution_height, b.crf);
  });
  for (std::size_t i = 1; i < points.size(); ++i) {
    const auto& a = points[i - 1];
    const auto& b = points[i];
    if (a.sequence_id == b.sequence_id && a.resolution_height == b.resolution_height &&
        a.crf == b.crf) {
      throw Error(ErrorKind::DuplicateKey, "duplicate measurement " + describe(b));
    }
  }

  Corpus corpus;
  std::set<int> heights;
  std::set<double> crfs;
  for (auto& p : points) {
    heights.insert(p.resolution_height);
    crfs.insert(p.crf);
    corpus.sequences[p.sequence_id].push_back(std::move(p));
  }
  if (corpus.sequences.empty()) {
    throw Error(ErrorKind::EmptyCorpus, "corpus has no measurements");
  }
  corpus.resolutions.assign(heights.begin(), heights.end());
  corpus.crf_grid.assign(crfs.begin(), crfs.end());

  for (const auto& [id, seq] : corpus.sequences) {
    std::size_t i = 0;
    while (i < seq.size()) {
      const int height = seq[i].resolution_height;
      std::size_t j = i;
      for (double crf : corpus.crf_grid) {
        if (j < seq.size() && seq[j].resolution_height == height && seq[j].crf == crf) {
          ++j;
          continue;
        }
        throw Error(ErrorKind::IncompleteGrid, "missing measurement (" + id + ", " +
                                                   std::to_string(height) + ", " +
                                                   format_shortest(crf) + ")");
      }
      if (warnings) {
        for (std::size_t k = i + 1; k < j; ++k) {
          if (!(seq[k].bitrate < seq[k - 1].bitrate)) {
            warnings->push_back("bitrate not decreasing in CRF at " + describe(seq[k]));
          }
          if (seq[k].quality > seq[k - 1].quality) {
            warnings->push_back("quality increases with CRF at " + describe(seq[k]));
          }
        }
      }
      i = j;
    }
  }
  return corpus;
}

Corpus parse_corpus_csv(std::string_view text, Warnings* warnings) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto pos = text.find('\n', start);
    if (pos == std::string_view::npos) pos = text.size();
    lines.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }

  std::size_t header_line = 0;
  while (header_line < lines.size() && trim(lines[header_line]).empty()) ++header_line;
  if (header_line == lines.size()) throw Error(ErrorKind::ParseError, "CSV has no header");

  const auto header = split_commas(lines[header_line]);
  std::vector<int> slot(header.size(), -1);
  std::vector<int> where(std::size(kColumns), -1);
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto it = std::find(std::begin(kColumns), std::end(kColumns), header[c]);
    if (it == std::end(kColumns)) {
      if (warnings) warnings->push_back("ignoring unknown column '" + std::string(header[c]) + "'");
      continue;
    }
    const auto k = static_cast<std::size_t>(it - std::begin(kColumns));
    if (where[k] >= 0) {
      throw Error(ErrorKind::ParseError, "column '" + std::string(header[c]) + "' repeated");
    }
    where[k] = static_cast<int>(c);
    slot[c] = static_cast<int>(k);
  }
  for (std::size_t k = 0; k < kRequiredColumns; ++k) {
    if (where[k] < 0) {
      throw Error(ErrorKind::ParseError, "missing required column '" + std::string(kColumns[k]) + "'");
    }
  }

  std::vector<MeasurementPoint> points;
  for (std::size_t l = header_line + 1; l < lines.size(); ++l) {
    if (trim(lines[l]).empty()) continue;
    const std::size_t line_no = l + 1;
    const auto fields = split_commas(lines[l]);
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                             std::to_string(header.size()) + " fields, got " +
                                             std::to_string(fields.size()));
    }
    MeasurementPoint p;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto f = fields[c];
      switch (slot[c]) {
        case 0:
          p.sequence_id = std::string(f);
          check_sequence_id(p.sequence_id, line_no);
          break;
        case 1: p.resolution_height = parse_height(f, line_no); break;
        case 2: p.crf = parse_number(f, kColumns[2], line_no); break;
        case 3: p.bitrate = parse_number(f, kColumns[3], line_no); break;
        case 4: p.quality = parse_number(f, kColumns[4], line_no); break;
        case 5: p.decode_energy = parse_number(f, kColumns[5], line_no); break;
        case 6:
          if (!f.empty()) p.encode_energy = parse_number(f, kColumns[6], line_no);
          break;
        default: break;
      }
    }
    points.push_back(std::move(p));
  }
  return build_corpus(std::move(points), warnings);
}

Corpus parse_corpus_json(std::string_view text, Warnings* warnings) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorKind::ParseError, "corpus JSON must be a top-level array");

  std::set<std::string> unknown;
  std::vector<MeasurementPoint> points;
  std::size_t index = 0;
  for (const auto& row : doc) {
    ++index;
    if (!row.is_object()) {
      throw Error(ErrorKind::ParseError, "record " + std::to_string(index) + " is not an object");
    }
    auto number = [&](std::string_view key) {
      const auto it = row.find(std::string(key));
      if (it == row.end() || !it->is_number()) {
        throw Error(ErrorKind::ParseError, "record " + std::to_string(index) + ": field '" +
                                               std::string(key) + "' missing or not a number");
      }
      return it->get<double>();
    };
    MeasurementPoint p;
    const auto id = row.find("sequence_id");
    if (id == row.end() || !id->is_string()) {
      throw Error(ErrorKind::ParseError,
                  "record " + std::to_string(index) + ": field 'sequence_id' missing or not a string");
    }
    p.sequence_id = id->get<std::string>();
    check_sequence_id(p.sequence_id, index);
    const double height = number("resolution_height");
    if (height != std::floor(height) || height < 1 || height > std::numeric_limits<int>::max()) {
      throw Error(ErrorKind::ParseError,
                  "record " + std::to_string(index) + ": resolution_height must be a positive integer");
    }
    p.resolution_height = static_cast<int>(height);
    p.crf = number("crf");
    p.bitrate = number("bitrate_kbps");
    p.quality = number("vmaf");
    p.decode_energy = number("decode_energy_j");
    if (const auto e = row.find("encode_energy_j"); e != row.end() && !e->is_null()) {
      p.encode_energy = number("encode_energy_j");
    }
    for (const auto& [key, value] : row.items()) {
      if (std::find(std::begin(kColumns), std::end(kColumns), key) == std::end(kColumns)) {
        unknown.insert(key);
      }
    }
    points.push_back(std::move(p));
  }
  if (warnings) {
    for (const auto& key : unknown) warnings->push_back("ignoring unknown field '" + key + "'");
  }
  return build_corpus(std::move(points), warnings);
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format, Warnings* warnings) {
  const std::string text = read_text_file(path);
  if (format == CorpusFormat::Auto) {
    format = path.extension() == ".json" ? CorpusFormat::Json : CorpusFormat::Csv;
  }
  return format == CorpusFormat::Json ? parse_corpus_json(text, warnings)
                                      : parse_corpus_csv(text, warnings);
}

std::string corpus_to_csv(const Corpus& corpus) {
  bool with_encode = false;
  for (const auto& [id, seq] : corpus.sequences) {
    for (const auto& p : seq) with_encode = with_encode || p.encode_energy.has_value();
  }
  std::string out = "sequence_id,resolution_height,crf,bitrate_kbps,vmaf,decode_energy_j";
  out += with_encode ? ",encode_energy_j\n" : "\n";
  for (const auto& [id, seq] : corpus.sequences) {
    for (const auto& p : seq) {
      out += p.sequence_id + ',' + std::to_string(p.resolution_height) + ',' +
             format_shortest(p.crf) + ',' + format_shortest(p.bitrate) + ',' +
             format_shortest(p.quality) + ',' + format_shortest(p.decode_energy);
      if (with_encode) out += ',' + (p.encode_energy ? format_shortest(*p.encode_energy) : "");
      out += '\n';
    }
  }
  return out;
}

std::string corpus_to_json(const Corpus& corpus) {
  json doc = json::array();
  for (const auto& [id, seq] : corpus.sequences) {
    for (const auto& p : seq) {
      json row = {{"sequence_id", p.sequence_id}, {"resolution_height", p.resolution_height},
                  {"crf", p.crf},                 {"bitrate_kbps", p.bitrate},
                  {"vmaf", p.quality},            {"decode_energy_j", p.decode_energy}};
      if (p.encode_energy) row["encode_energy_j"] = *p.encode_energy;
      doc.push_back(std::move(row));
    }
  }
  return doc.dump(1) + "\n";
}

SummaryStats corpus_summary(const Corpus& corpus) {
  if (corpus.sequences.empty()) throw Error(ErrorKind::EmptyCorpus, "corpus has no measurements");

  struct Acc {
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    void add(double v) {
      min = std::min(min, v);
      max = std::max(max, v);
      sum += v;
    }
    RangeStats stats(std::size_t n) const { return {min, max, sum / static_cast<double>(n)}; }
  };
  struct Group {
    std::size_t n = 0;
    Acc rate, quality, energy, log_rate, log_energy;
  };

  std::map<int, Group> groups;
  SummaryStats summary;
  summary.sequence_count = corpus.sequences.size();
  for (const auto& [id, seq] : corpus.sequences) {
    for (const auto& p : seq) {
      auto& g = groups[p.resolution_height];
      ++g.n;
      g.rate.add(p.bitrate);
      g.quality.add(p.quality);
      g.energy.add(p.decode_energy);
      g.log_rate.add(std::log10(p.bitrate));
      g.log_energy.add(std::log10(p.decode_energy));
      ++summary.point_count;
    }
  }
  for (const auto& [height, g] : groups) {
    summary.per_resolution.push_back({height, g.n, g.rate.stats(g.n), g.quality.stats(g.n),
                                      g.energy.stats(g.n), g.log_rate.stats(g.n),
                                      g.log_energy.stats(g.n)});
  }
  return summary;
}

}  // namespace eqladder
