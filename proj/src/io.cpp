#include "eqladder/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "eqladder/error.hpp"
#include "json.hpp"

namespace eqladder {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string log10_text(double v) { return format_sig6(std::log10(v)); }

json point_json(const SampledPoint& p) {
  return {{"resolution_height", p.resolution_height},
          {"crf", p.crf},
          {"bitrate_kbps", p.bitrate},
          {"vmaf", p.quality},
          {"decode_energy_j", p.decode_energy},
          {"is_knot", p.is_knot}};
}

SampledPoint point_from_json(const json& j) {
  SampledPoint p;
  p.resolution_height = j.at("resolution_height").get<int>();
  p.crf = j.at("crf").get<double>();
  p.bitrate = j.at("bitrate_kbps").get<double>();
  p.quality = j.at("vmaf").get<double>();
  p.decode_energy = j.at("decode_energy_j").get<double>();
  p.is_knot = j.value("is_knot", false);
  return p;
}

json config_json(const LadderConfig& c) {
  return {{"rate_min", c.rate_min},         {"rate_max", c.rate_max},
          {"rate_band", c.rate_band},       {"quality_min", c.quality_min},
          {"quality_max", c.quality_max},   {"quality_step", c.quality_step},
          {"quality_band", c.quality_band}, {"fallback", std::string(to_string(c.fallback))}};
}

LadderConfig config_from_json(const json& j) {
  LadderConfig c;
  c.rate_min = j.at("rate_min").get<double>();
  c.rate_max = j.at("rate_max").get<double>();
  c.rate_band = j.at("rate_band").get<double>();
  c.quality_min = j.at("quality_min").get<double>();
  c.quality_max = j.at("quality_max").get<double>();
  c.quality_step = j.at("quality_step").get<double>();
  c.quality_band = j.at("quality_band").get<double>();
  c.fallback = fallback_from_string(j.value("fallback", std::string("skip")));
  return c;
}

json diff_json(const RelativeDiff& d) {
  return {{"delta_rate", d.delta_rate},
          {"delta_quality", d.delta_quality},
          {"delta_energy", d.delta_energy},
          {"rungs_compared", d.rungs_compared}};
}

void append_point_columns(std::string& out, const SampledPoint& p) {
  out += std::to_string(p.resolution_height) + ',' + format_sig6(p.crf) + ',' +
         format_sig6(p.bitrate) + ',' + format_sig6(p.quality) + ',' + format_sig6(p.decode_energy);
}

}  // namespace

std::string format_sig6(double value) {
  if (value == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string format_shortest(double value) {
  if (value == 0.0) return "0";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::OutputError, "cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorKind::OutputError, "short write to '" + tmp.string() + "'");
  }
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::OutputError, "cannot rename into '" + path.string() + "': " + ec.message());
}

std::string summary_to_csv(const SummaryStats& s) {
  std::string out =
      "resolution_height,count,bitrate_min,bitrate_max,bitrate_mean,vmaf_min,vmaf_max,vmaf_mean,"
      "energy_min,energy_max,energy_mean,log10_bitrate_min,log10_bitrate_max,log10_energy_min,"
      "log10_energy_max\n";
  for (const auto& r : s.per_resolution) {
    out += std::to_string(r.resolution_height) + ',' + std::to_string(r.count);
    for (const RangeStats* st : {&r.bitrate, &r.quality, &r.decode_energy}) {
      out += ',' + format_sig6(st->min) + ',' + format_sig6(st->max) + ',' + format_sig6(st->mean);
    }
    out += ',' + format_sig6(r.log10_bitrate.min) + ',' + format_sig6(r.log10_bitrate.max) + ',' +
           format_sig6(r.log10_energy.min) + ',' + format_sig6(r.log10_energy.max) + '\n';
  }
  return out;
}

std::string parameter_space_csv(const Corpus& corpus) {
  std::string out = "sequence_id,resolution_height,crf,log10_bitrate,vmaf,log10_energy\n";
  for (const auto& [id, seq] : corpus.sequences) {
    for (const auto& p : seq) {
      out += id + ',' + std::to_string(p.resolution_height) + ',' + format_sig6(p.crf) + ',' +
             log10_text(p.bitrate) + ',' + format_sig6(p.quality) + ',' + log10_text(p.decode_energy) +
             '\n';
    }
  }
  return out;
}

std::string curves_to_csv(const std::vector<ResolutionCurve>& curves) {
  std::string out = "sequence_id,resolution_height,crf,bitrate_kbps,vmaf,decode_energy_j,is_knot\n";
  for (const auto& c : curves) {
    for (const auto& p : c.samples) {
      out += c.sequence_id + ',' + std::to_string(c.resolution_height) + ',' + format_sig6(p.crf) +
             ',' + format_sig6(p.bitrate) + ',' + format_sig6(p.quality) + ',' +
             format_sig6(p.decode_energy) + ',' + (p.is_knot ? "1" : "0") + '\n';
    }
  }
  return out;
}

std::string fronts_to_csv(const std::vector<ParetoFront>& fronts) {
  std::string out = "sequence_id,domain,resolution_height,crf,bitrate_kbps,vmaf,decode_energy_j\n";
  for (const auto& f : fronts) {
    for (const auto& p : f.points) {
      out += f.sequence_id + ',' + std::string(to_string(f.domain)) + ',';
      append_point_columns(out, p);
      out += '\n';
    }
  }
  return out;
}

std::string fronts_plot_csv(const std::vector<ParetoFront>& fronts) {
  std::string out = "sequence_id,front,order,resolution_height,log10_bitrate,log10_energy,vmaf\n";
  for (const auto& f : fronts) {
    for (std::size_t i = 0; i < f.points.size(); ++i) {
      const auto& p = f.points[i];
      out += f.sequence_id + ',' + std::string(to_string(f.domain)) + "-PF," + std::to_string(i + 1) +
             ',' + std::to_string(p.resolution_height) + ',' + log10_text(p.bitrate) + ',' +
             log10_text(p.decode_energy) + ',' + format_sig6(p.quality) + '\n';
    }
  }
  return out;
}

std::string composition_to_csv(const std::vector<SequenceComposition>& rows) {
  std::string out = "sequence_id,domain,resolution_height,share\n";
  for (const auto& r : rows) {
    for (const auto& [height, share] : r.histogram.share) {
      out += r.sequence_id + ',' + std::string(to_string(r.histogram.domain)) + ',' +
             std::to_string(height) + ',' + format_sig6(share) + '\n';
    }
  }
  return out;
}

std::string composition_mean_csv(const std::vector<SequenceComposition>& rows,
                                 const std::vector<int>& resolutions) {
  std::string out = "domain,resolution_height,mean_share,sequences\n";
  for (DomainTag domain : {DomainTag::RQ, DomainTag::EQ}) {
    std::size_t n = 0;
    std::map<int, double> sum;
    for (const auto& r : rows) {
      if (r.histogram.domain != domain) continue;
      ++n;
      for (const auto& [height, share] : r.histogram.share) sum[height] += share;
    }
    if (n == 0) continue;
    for (int height : resolutions) {
      out += std::string(to_string(domain)) + ',' + std::to_string(height) + ',' +
             format_sig6(sum[height] / static_cast<double>(n)) + ',' + std::to_string(n) + '\n';
    }
  }
  return out;
}

std::string ladder_kind(LadderMethod method, DomainTag domain) {
  return std::string(to_string(method)) + '_' + std::string(to_string(domain));
}

std::string ladder_to_json(const Ladder& ladder) {
  json rungs = json::array();
  for (const auto& r : ladder.rungs) {
    json rung = {{"index", r.index}, {"target", r.target}, {"status", std::string(to_string(r.status))}};
    rung["point"] = r.chosen ? point_json(*r.chosen) : json(nullptr);
    rungs.push_back(std::move(rung));
  }
  json doc = {{"sequence_id", ladder.sequence_id},
              {"method", std::string(to_string(ladder.method))},
              {"source_domain", std::string(to_string(ladder.source_domain))},
              {"config", config_json(ladder.config)},
              {"rungs", std::move(rungs)}};
  return doc.dump(2) + "\n";
}

Ladder ladder_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    Ladder ladder;
    ladder.sequence_id = doc.at("sequence_id").get<std::string>();
    ladder.method = ladder_method_from_string(doc.at("method").get<std::string>());
    ladder.source_domain = domain_from_string(doc.at("source_domain").get<std::string>());
    ladder.config = config_from_json(doc.at("config"));
    for (const auto& r : doc.at("rungs")) {
      LadderRung rung;
      rung.index = r.at("index").get<int>();
      rung.target = r.at("target").get<double>();
      const auto status = r.at("status").get<std::string>();
      if (status != "filled" && status != "skipped") {
        throw Error(ErrorKind::ParseError, "unknown rung status '" + status + "'");
      }
      rung.status = status == "filled" ? RungStatus::Filled : RungStatus::Skipped;
      if (const auto p = r.find("point"); p != r.end() && !p->is_null()) rung.chosen = point_from_json(*p);
      if (rung.status == RungStatus::Filled && !rung.chosen) {
        throw Error(ErrorKind::ParseError, "filled rung " + std::to_string(rung.index) + " has no point");
      }
      ladder.rungs.push_back(rung);
    }
    return ladder;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed ladder JSON: ") + e.what());
  }
}

std::string ladders_to_csv(const std::vector<Ladder>& ladders) {
  std::string out =
      "sequence_id,method,source_domain,index,target,status,resolution_height,crf,bitrate_kbps,vmaf,"
      "decode_energy_j\n";
  for (const auto& l : ladders) {
    for (const auto& r : l.rungs) {
      out += l.sequence_id + ',' + std::string(to_string(l.method)) + ',' +
             std::string(to_string(l.source_domain)) + ',' + std::to_string(r.index) + ',' +
             format_sig6(r.target) + ',' + std::string(to_string(r.status)) + ',';
      if (r.chosen) append_point_columns(out, *r.chosen);
      else out += ",,,,";
      out += '\n';
    }
  }
  return out;
}

std::string ladders_plot_csv(const std::vector<Ladder>& ladders) {
  std::string out = "sequence_id,ladder,index,resolution_height,log10_bitrate,log10_energy,vmaf\n";
  for (const auto& l : ladders) {
    const auto kind = ladder_kind(l.method, l.source_domain);
    for (const auto& r : l.rungs) {
      if (!r.chosen) continue;
      const auto& p = *r.chosen;
      out += l.sequence_id + ',' + kind + ',' + std::to_string(r.index) + ',' +
             std::to_string(p.resolution_height) + ',' + log10_text(p.bitrate) + ',' +
             log10_text(p.decode_energy) + ',' + format_sig6(p.quality) + '\n';
    }
  }
  return out;
}

std::string eval_table_csv(const std::vector<EvalRow>& rows) {
  std::string out = "ladder,delta_rate_mean,delta_rate_std,delta_q_mean,delta_q_std,delta_e_mean,delta_e_std\n";
  for (const auto& r : rows) {
    const auto& m = r.result.mean;
    const auto& s = r.result.stddev;
    out += r.label + ',' + format_sig6(m.delta_rate) + ',' + format_sig6(s.delta_rate) + ',' +
           format_sig6(m.delta_quality) + ',' + format_sig6(s.delta_quality) + ',' +
           format_sig6(m.delta_energy) + ',' + format_sig6(s.delta_energy) + '\n';
  }
  return out;
}

std::string eval_report_json(const std::vector<EvalRow>& rows, const LadderConfig& config,
                             std::string_view mode) {
  json ladders = json::array();
  for (const auto& r : rows) {
    json per_seq = json::object();
    for (const auto& [id, d] : r.result.per_sequence) per_seq[id] = diff_json(d);
    ladders.push_back({{"ladder", r.label},
                       {"reference", r.reference_kind},
                       {"proposed", r.proposed_kind},
                       {"mean", diff_json(r.result.mean)},
                       {"stddev", diff_json(r.result.stddev)},
                       {"per_sequence", std::move(per_seq)},
                       {"excluded", r.result.excluded},
                       {"missing", r.result.missing}});
  }
  json doc = {{"mode", std::string(mode)},
              {"metric", "mean relative difference (ref - prop) / ref over index-paired filled rungs"},
              {"pairing", "rung index; pairs with a skipped rung on either side are dropped"},
              {"stddev", "population"},
              {"config", config_json(config)},
              {"ladders", std::move(ladders)}};
  return doc.dump(2) + "\n";
}

std::string mean_ladders_csv(const std::vector<MeanLadder>& ladders) {
  std::string out =
      "ladder,index,target,count,bitrate_mean,bitrate_se,vmaf_mean,vmaf_se,energy_mean,energy_se,"
      "log10_bitrate_mean,log10_energy_mean\n";
  for (const auto& l : ladders) {
    const auto kind = ladder_kind(l.method, l.source_domain);
    for (const auto& r : l.rungs) {
      out += kind + ',' + std::to_string(r.index) + ',' + format_sig6(r.target) + ',' +
             std::to_string(r.count) + ',' + format_sig6(r.mean_rate) + ',' + format_sig6(r.se_rate) +
             ',' + format_sig6(r.mean_quality) + ',' + format_sig6(r.se_quality) + ',' +
             format_sig6(r.mean_energy) + ',' + format_sig6(r.se_energy) + ',' +
             log10_text(r.mean_rate) + ',' + log10_text(r.mean_energy) + '\n';
    }
  }
  return out;
}

std::string mean_ladders_plot_csv(const std::vector<MeanLadder>& ladders) {
  std::string out = "ladder,domain,index,x,x_lo,x_hi,y,y_lo,y_hi\n";
  const auto bounded_log = [](double mean, double se) {
    const double lo = mean - se;
    return format_sig6(std::log10(mean)) + ',' + (lo > 0.0 ? format_sig6(std::log10(lo)) : "") + ',' +
           format_sig6(std::log10(mean + se));
  };
  const auto linear = [](double mean, double se) {
    return format_sig6(mean) + ',' + format_sig6(mean - se) + ',' + format_sig6(mean + se);
  };
  for (const char* domain : {"RQ", "EQ", "RE"}) {
    for (const auto& l : ladders) {
      const auto kind = ladder_kind(l.method, l.source_domain);
      for (const auto& r : l.rungs) {
        out += kind + ',' + domain + ',' + std::to_string(r.index) + ',';
        if (domain[0] == 'R' && domain[1] == 'Q') {
          out += bounded_log(r.mean_rate, r.se_rate) + ',' + linear(r.mean_quality, r.se_quality);
        } else if (domain[0] == 'E') {
          out += bounded_log(r.mean_energy, r.se_energy) + ',' + linear(r.mean_quality, r.se_quality);
        } else {
          out += bounded_log(r.mean_rate, r.se_rate) + ',' + bounded_log(r.mean_energy, r.se_energy);
        }
        out += '\n';
      }
    }
  }
  return out;
}

}  // namespace eqladder
