#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "eqladder/akima.hpp"
#include "eqladder/error.hpp"
#include "eqladder/eval.hpp"
#include "eqladder/ingest.hpp"
#include "eqladder/interp.hpp"
#include "eqladder/io.hpp"
#include "eqladder/ladder.hpp"
#include "eqladder/pareto.hpp"
#include "eqladder/pipeline.hpp"
#include "eqladder/synth.hpp"

namespace py = pybind11;
using namespace eqladder;

namespace {

void bind_data(py::module_& m) {
  py::enum_<DomainTag>(m, "DomainTag").value("RQ", DomainTag::RQ).value("EQ", DomainTag::EQ);

  py::class_<MeasurementPoint>(m, "MeasurementPoint")
      .def(py::init<>())
      .def_readwrite("sequence_id", &MeasurementPoint::sequence_id)
      .def_readwrite("resolution_height", &MeasurementPoint::resolution_height)
      .def_readwrite("crf", &MeasurementPoint::crf)
      .def_readwrite("bitrate", &MeasurementPoint::bitrate)
      .def_readwrite("quality", &MeasurementPoint::quality)
      .def_readwrite("decode_energy", &MeasurementPoint::decode_energy)
      .def_readwrite("encode_energy", &MeasurementPoint::encode_energy)
      .def(py::self == py::self);

  py::class_<Corpus>(m, "Corpus")
      .def(py::init<>())
      .def_readonly("sequences", &Corpus::sequences)
      .def_readonly("resolutions", &Corpus::resolutions)
      .def_readonly("crf_grid", &Corpus::crf_grid)
      .def("point_count", &Corpus::point_count)
      .def(py::self == py::self);

  py::class_<SampledPoint>(m, "SampledPoint")
      .def(py::init<>())
      .def_readwrite("crf", &SampledPoint::crf)
      .def_readwrite("bitrate", &SampledPoint::bitrate)
      .def_readwrite("quality", &SampledPoint::quality)
      .def_readwrite("decode_energy", &SampledPoint::decode_energy)
      .def_readwrite("resolution_height", &SampledPoint::resolution_height)
      .def_readwrite("is_knot", &SampledPoint::is_knot)
      .def(py::self == py::self)
      .def("__repr__", [](const SampledPoint& p) {
        return "<SampledPoint " + std::to_string(p.resolution_height) + "p crf=" + format_sig6(p.crf) +
               " rate=" + format_sig6(p.bitrate) + " vmaf=" + format_sig6(p.quality) +
               " energy=" + format_sig6(p.decode_energy) + ">";
      });

  py::class_<ResolutionCurve>(m, "ResolutionCurve")
      .def_readonly("sequence_id", &ResolutionCurve::sequence_id)
      .def_readonly("resolution_height", &ResolutionCurve::resolution_height)
      .def_readonly("samples", &ResolutionCurve::samples);

  py::class_<RangeStats>(m, "RangeStats")
      .def_readonly("min", &RangeStats::min)
      .def_readonly("max", &RangeStats::max)
      .def_readonly("mean", &RangeStats::mean);
  py::class_<ResolutionSummary>(m, "ResolutionSummary")
      .def_readonly("resolution_height", &ResolutionSummary::resolution_height)
      .def_readonly("count", &ResolutionSummary::count)
      .def_readonly("bitrate", &ResolutionSummary::bitrate)
      .def_readonly("quality", &ResolutionSummary::quality)
      .def_readonly("decode_energy", &ResolutionSummary::decode_energy)
      .def_readonly("log10_bitrate", &ResolutionSummary::log10_bitrate)
      .def_readonly("log10_energy", &ResolutionSummary::log10_energy);
  py::class_<SummaryStats>(m, "SummaryStats")
      .def_readonly("sequence_count", &SummaryStats::sequence_count)
      .def_readonly("point_count", &SummaryStats::point_count)
      .def_readonly("per_resolution", &SummaryStats::per_resolution);
}

void bind_pipeline(py::module_& m) {
  py::class_<AkimaSpline>(m, "AkimaSpline")
      .def(py::init([](const std::vector<double>& xs, const std::vector<double>& ys) {
             return AkimaSpline(xs, ys);
           }),
           py::arg("xs"), py::arg("ys"))
      .def("__call__", &AkimaSpline::operator(), py::arg("x"))
      .def("derivative", &AkimaSpline::derivative, py::arg("x"))
      .def_property_readonly("knot_slopes", &AkimaSpline::knot_slopes);

  py::enum_<InterpSpace>(m, "InterpSpace")
      .value("Linear", InterpSpace::Linear)
      .value("Log10", InterpSpace::Log10);

  py::class_<ParetoFront>(m, "ParetoFront")
      .def(py::init<>())
      .def_readwrite("sequence_id", &ParetoFront::sequence_id)
      .def_readwrite("domain", &ParetoFront::domain)
      .def_readwrite("points", &ParetoFront::points);
  py::class_<CompositionHistogram>(m, "CompositionHistogram")
      .def_readonly("domain", &CompositionHistogram::domain)
      .def_readonly("share", &CompositionHistogram::share);
  py::class_<AxisPoint>(m, "AxisPoint")
      .def_readonly("cost", &AxisPoint::cost)
      .def_readonly("quality", &AxisPoint::quality)
      .def_readonly("point", &AxisPoint::point);

  py::enum_<LadderMethod>(m, "LadderMethod")
      .value("RateDriven", LadderMethod::RateDriven)
      .value("QualityDriven", LadderMethod::QualityDriven);
  py::enum_<RungStatus>(m, "RungStatus").value("Filled", RungStatus::Filled).value("Skipped", RungStatus::Skipped);
  py::enum_<FallbackMode>(m, "FallbackMode").value("Skip", FallbackMode::Skip).value("Nearest", FallbackMode::Nearest);

  py::class_<LadderConfig>(m, "LadderConfig")
      .def(py::init<>())
      .def_readwrite("rate_min", &LadderConfig::rate_min)
      .def_readwrite("rate_max", &LadderConfig::rate_max)
      .def_readwrite("rate_band", &LadderConfig::rate_band)
      .def_readwrite("quality_min", &LadderConfig::quality_min)
      .def_readwrite("quality_max", &LadderConfig::quality_max)
      .def_readwrite("quality_step", &LadderConfig::quality_step)
      .def_readwrite("quality_band", &LadderConfig::quality_band)
      .def_readwrite("fallback", &LadderConfig::fallback)
      .def("validate", &LadderConfig::validate);
  py::class_<LadderRung>(m, "LadderRung")
      .def_readonly("index", &LadderRung::index)
      .def_readonly("target", &LadderRung::target)
      .def_readonly("status", &LadderRung::status)
      .def_readonly("chosen", &LadderRung::chosen);
  py::class_<Ladder>(m, "Ladder")
      .def_readonly("sequence_id", &Ladder::sequence_id)
      .def_readonly("method", &Ladder::method)
      .def_readonly("source_domain", &Ladder::source_domain)
      .def_readonly("config", &Ladder::config)
      .def_readonly("rungs", &Ladder::rungs)
      .def("filled_count", &Ladder::filled_count)
      .def(py::self == py::self);

  py::class_<RelativeDiff>(m, "RelativeDiff")
      .def_readonly("delta_rate", &RelativeDiff::delta_rate)
      .def_readonly("delta_quality", &RelativeDiff::delta_quality)
      .def_readonly("delta_energy", &RelativeDiff::delta_energy)
      .def_readonly("rungs_compared", &RelativeDiff::rungs_compared);
  py::class_<CorpusEval>(m, "CorpusEval")
      .def_readonly("per_sequence", &CorpusEval::per_sequence)
      .def_readonly("mean", &CorpusEval::mean)
      .def_readonly("stddev", &CorpusEval::stddev)
      .def_readonly("excluded", &CorpusEval::excluded)
      .def_readonly("missing", &CorpusEval::missing);
  py::class_<MeanRung>(m, "MeanRung")
      .def_readonly("index", &MeanRung::index)
      .def_readonly("target", &MeanRung::target)
      .def_readonly("count", &MeanRung::count)
      .def_readonly("mean_rate", &MeanRung::mean_rate)
      .def_readonly("se_rate", &MeanRung::se_rate)
      .def_readonly("mean_quality", &MeanRung::mean_quality)
      .def_readonly("se_quality", &MeanRung::se_quality)
      .def_readonly("mean_energy", &MeanRung::mean_energy)
      .def_readonly("se_energy", &MeanRung::se_energy);
  py::class_<MeanLadder>(m, "MeanLadder")
      .def_readonly("method", &MeanLadder::method)
      .def_readonly("source_domain", &MeanLadder::source_domain)
      .def_readonly("rungs", &MeanLadder::rungs);

  py::class_<ResolutionModel>(m, "ResolutionModel")
      .def(py::init<>())
      .def_readwrite("height", &ResolutionModel::height)
      .def_readwrite("base_rate", &ResolutionModel::base_rate)
      .def_readwrite("halving_crf", &ResolutionModel::halving_crf)
      .def_readwrite("quality_ceiling", &ResolutionModel::quality_ceiling)
      .def_readwrite("quality_slope", &ResolutionModel::quality_slope)
      .def_readwrite("quality_midpoint", &ResolutionModel::quality_midpoint)
      .def_readwrite("energy_offset", &ResolutionModel::energy_offset);
  py::class_<SynthSpec>(m, "SynthSpec")
      .def(py::init<>())
      .def_readwrite("sequence_count", &SynthSpec::sequence_count)
      .def_readwrite("resolutions", &SynthSpec::resolutions)
      .def_readwrite("crf_grid", &SynthSpec::crf_grid)
      .def_readwrite("base_energy", &SynthSpec::base_energy)
      .def_readwrite("energy_per_kbps", &SynthSpec::energy_per_kbps)
      .def_readwrite("complexity_spread", &SynthSpec::complexity_spread)
      .def_readwrite("noise", &SynthSpec::noise)
      .def_readwrite("rng_seed", &SynthSpec::rng_seed)
      .def_readwrite("id_prefix", &SynthSpec::id_prefix);
}

void bind_functions(py::module_& m) {
  m.def("load_corpus",
        [](const std::filesystem::path& path, const std::string& format) {
          return load_corpus(path, corpus_format_from_string(format));
        },
        py::arg("path"), py::arg("format") = "auto");
  m.def("parse_corpus_csv", [](const std::string& text) { return parse_corpus_csv(text); }, py::arg("text"));
  m.def("parse_corpus_json", [](const std::string& text) { return parse_corpus_json(text); }, py::arg("text"));
  m.def("corpus_to_csv", &corpus_to_csv);
  m.def("corpus_to_json", &corpus_to_json);
  m.def("corpus_summary", &corpus_summary);

  m.def("sample_curves",
        [](const Corpus& corpus, double step, InterpSpace space) {
          return sample_curves(corpus, SamplingOptions{step, space});
        },
        py::arg("corpus"), py::arg("step") = 0.1, py::arg("space") = InterpSpace::Linear);

  m.def("extract_front", py::overload_cast<const std::vector<ResolutionCurve>&, DomainTag>(&extract_front),
        py::arg("curves"), py::arg("domain"));
  m.def("extract_front_points",
        [](const std::string& id, const std::vector<SampledPoint>& points, DomainTag domain) {
          return extract_front(id, points, domain);
        },
        py::arg("sequence_id"), py::arg("points"), py::arg("domain"));
  m.def("front_composition", &front_composition);
  m.def("project_front", &project_front, py::arg("front"), py::arg("target"));
  m.def("is_monotone", [](const std::vector<AxisPoint>& pts) { return is_monotone(pts); });

  m.def("rate_targets", &rate_targets);
  m.def("quality_targets", &quality_targets);
  m.def("rate_driven_ladder", &rate_driven_ladder, py::arg("front"), py::arg("config") = LadderConfig{});
  m.def("quality_driven_ladder", &quality_driven_ladder, py::arg("front"), py::arg("config") = LadderConfig{});
  m.def("ladder_to_domain", &ladder_to_domain, py::arg("ladder"), py::arg("target"));
  m.def("ladder_to_json", &ladder_to_json);
  m.def("ladder_from_json", [](const std::string& text) { return ladder_from_json(text); });

  m.def("relative_diff", &relative_diff, py::arg("reference"), py::arg("proposed"));
  m.def("corpus_eval", &corpus_eval, py::arg("reference"), py::arg("proposed"));
  m.def("mean_ladder", &mean_ladder, py::arg("ladders"));

  m.def("default_synth_spec", &default_synth_spec);
  m.def("crossed_synth_spec", &crossed_synth_spec);
  m.def("make_synthetic_corpus", &make_synthetic_corpus, py::arg("spec"));
  m.def("synth_spec_from_json", [](const std::string& text) { return synth_spec_from_json(text); });
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rate-quality and energy-quality bitrate ladders";

  static py::handle error_type = py::exception<Error>(m, "Error", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  bind_data(m);
  bind_pipeline(m);
  bind_functions(m);

  m.attr("__version__") = kToolVersion;
}
