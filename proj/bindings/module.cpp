#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "subdrift/bench.hpp"
#include "subdrift/config.hpp"
#include "subdrift/drift.hpp"

namespace py = pybind11;
using namespace subdrift;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Localized concept drift benchmark core";

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def_static("derive", &Rng::derive, py::arg("master"), py::arg("domain"), py::arg("id"))
      .def("uniform01", &Rng::uniform01)
      .def("uniform_int", &Rng::uniform_int, py::arg("lo"), py::arg("hi"))
      .def("bernoulli", &Rng::bernoulli, py::arg("p"));

  py::enum_<Attribute>(m, "Attribute")
      .value("salary", Attribute::salary)
      .value("commission", Attribute::commission)
      .value("age", Attribute::age)
      .value("elevel", Attribute::elevel)
      .value("car", Attribute::car)
      .value("zipcode", Attribute::zipcode)
      .value("hvalue", Attribute::hvalue)
      .value("hyears", Attribute::hyears)
      .value("loan", Attribute::loan);

  py::enum_<CommissionRule>(m, "CommissionRule")
      .value("zero_below_75k", CommissionRule::zero_below_75k)
      .value("zero_at_or_above_75k", CommissionRule::zero_at_or_above_75k);

  py::class_<Record>(m, "Record")
      .def(py::init<>())
      .def_readwrite("salary", &Record::salary)
      .def_readwrite("commission", &Record::commission)
      .def_readwrite("age", &Record::age)
      .def_readwrite("elevel", &Record::elevel)
      .def_readwrite("car", &Record::car)
      .def_readwrite("zipcode", &Record::zipcode)
      .def_readwrite("hvalue", &Record::hvalue)
      .def_readwrite("hyears", &Record::hyears)
      .def_readwrite("loan", &Record::loan)
      .def("value", &Record::value, py::arg("attribute"))
      .def("__repr__", [](const Record& r) {
        return "Record(salary=" + std::to_string(r.salary) +
               ", age=" + std::to_string(r.age) + ", ...)";
      });

  m.def("sample_record", &sample_record, py::arg("rng"),
        py::arg("rule") = CommissionRule::zero_below_75k);
  m.def(
      "classify",
      [](const Record& r, int concept_index) { return classify(r, ConceptId(concept_index)); },
      py::arg("record"), py::arg("concept"));
  m.def("perturb", &perturb, py::arg("record"), py::arg("magnitude"), py::arg("rng"));

  py::class_<Slice>(m, "Slice")
      .def(py::init([](Attribute a, double lo, double hi) {
             Slice s{a, lo, hi};
             validate_slice(s);
             return s;
           }),
           py::arg("attribute"), py::arg("lo"), py::arg("hi"))
      .def_readonly("attribute", &Slice::attribute)
      .def_readonly("lo", &Slice::lo)
      .def_readonly("hi", &Slice::hi)
      .def("__repr__", [](const Slice& s) { return slice_description(s); });

  m.def("slice_probability", &slice_probability, py::arg("slice"));

  py::class_<Subgroup>(m, "Subgroup")
      .def(py::init<>())
      .def("set_slice", &Subgroup::set_slice, py::arg("slice"))
      .def_property_readonly("slices", &Subgroup::slices)
      .def("computed_size", &Subgroup::computed_size)
      .def("contains", &Subgroup::contains, py::arg("record"))
      .def("description", &Subgroup::description);

  py::class_<SubgroupGenResult>(m, "SubgroupGenResult")
      .def_readonly("subgroup", &SubgroupGenResult::subgroup)
      .def_readonly("computed_size", &SubgroupGenResult::computed_size)
      .def_readonly("residual_gap", &SubgroupGenResult::residual_gap)
      .def_readonly("iterations", &SubgroupGenResult::iterations)
      .def_readonly("converged", &SubgroupGenResult::converged);

  m.def(
      "generate_subgroup",
      [](double target, double tolerance, int max_iter, Rng& rng) {
        return generate_subgroup(target, tolerance, max_iter, rng);
      },
      py::arg("target"), py::arg("tolerance"), py::arg("max_iter"), py::arg("rng"));

  m.def("mix_probability", &mix_probability, py::arg("t"), py::arg("center"),
        py::arg("width"));

  py::class_<DriftSchedule>(m, "DriftSchedule")
      .def(py::init([](int concept_orig, int concept_drift, double center, double width,
                       const Subgroup& subgroup, bool enabled) {
             DriftSchedule s{ConceptId(concept_orig), ConceptId(concept_drift), center,
                             width, subgroup, enabled};
             s.validate();
             return s;
           }),
           py::arg("concept_orig"), py::arg("concept_drift"), py::arg("center") = 100.0,
           py::arg("width") = 100.0, py::arg("subgroup") = Subgroup(),
           py::arg("enabled") = true);

  m.def(
      "label_with_drift",
      [](const Record& r, double t, const DriftSchedule& s, Rng& rng) {
        return label_with_drift(r, t, s, rng);
      },
      py::arg("record"), py::arg("t"), py::arg("schedule"), py::arg("rng"));

  py::class_<StreamSample>(m, "StreamSample")
      .def_readonly("record", &StreamSample::record)
      .def_readonly("label", &StreamSample::label)
      .def_readonly("in_subgroup", &StreamSample::in_subgroup)
      .def_readonly("batch", &StreamSample::batch);

  py::class_<DriftStream>(m, "DriftStream")
      .def(py::init<DriftSchedule, int, int, double, CommissionRule, Rng>(),
           py::arg("schedule"), py::arg("batch_count"), py::arg("batch_size"),
           py::arg("perturbation"), py::arg("rule"), py::arg("rng"))
      .def("next", &DriftStream::next);

  py::class_<Dataset>(m, "Dataset")
      .def(py::init<>())
      .def_readwrite("records", &Dataset::records)
      .def_readwrite("labels", &Dataset::labels);

  py::class_<DecisionTree>(m, "DecisionTree")
      .def_static(
          "fit",
          [](const Dataset& data, int max_depth, int min_leaf) {
            return DecisionTree::fit(data, {max_depth, min_leaf});
          },
          py::arg("data"), py::arg("max_depth") = 5, py::arg("min_leaf") = 5)
      .def("predict", &DecisionTree::predict, py::arg("record"))
      .def_property_readonly("depth", &DecisionTree::depth)
      .def_property_readonly("training_accuracy", &DecisionTree::training_accuracy)
      .def("dump", &DecisionTree::dump);

  py::enum_<DetectorStatus>(m, "DetectorStatus")
      .value("stable", DetectorStatus::stable)
      .value("warning", DetectorStatus::warning)
      .value("drift", DetectorStatus::drift);

  py::class_<DdmConfig>(m, "DdmConfig")
      .def(py::init<>())
      .def_readwrite("warning_multiplier", &DdmConfig::warning_multiplier)
      .def_readwrite("drift_multiplier", &DdmConfig::drift_multiplier)
      .def_readwrite("min_samples", &DdmConfig::min_samples);
  py::class_<EddmConfig>(m, "EddmConfig")
      .def(py::init<>())
      .def_readwrite("warning_ratio", &EddmConfig::warning_ratio)
      .def_readwrite("drift_ratio", &EddmConfig::drift_ratio)
      .def_readwrite("min_errors", &EddmConfig::min_errors);
  py::class_<HddmConfig>(m, "HddmConfig")
      .def(py::init<>())
      .def_readwrite("warning_delta", &HddmConfig::warning_delta)
      .def_readwrite("drift_delta", &HddmConfig::drift_delta);
  py::class_<FhddmConfig>(m, "FhddmConfig")
      .def(py::init<>())
      .def_readwrite("window", &FhddmConfig::window)
      .def_readwrite("delta", &FhddmConfig::delta);

  py::class_<Detector>(m, "Detector")
      .def("update", &Detector::update, py::arg("error"))
      .def("reset", &Detector::reset);
  py::class_<DdmDetector, Detector>(m, "DdmDetector")
      .def(py::init<DdmConfig>(), py::arg("config") = DdmConfig{});
  py::class_<EddmDetector, Detector>(m, "EddmDetector")
      .def(py::init<EddmConfig>(), py::arg("config") = EddmConfig{});
  py::class_<HddmADetector, Detector>(m, "HddmADetector")
      .def(py::init<HddmConfig>(), py::arg("config") = HddmConfig{});
  py::class_<FhddmDetector, Detector>(m, "FhddmDetector")
      .def(py::init<FhddmConfig>(), py::arg("config") = FhddmConfig{});

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("subgroup_sizes", &ExperimentConfig::subgroup_sizes)
      .def_readwrite("runs_per_size", &ExperimentConfig::runs_per_size)
      .def_readwrite("train_size", &ExperimentConfig::train_size)
      .def_readwrite("batch_count", &ExperimentConfig::batch_count)
      .def_readwrite("batch_size", &ExperimentConfig::batch_size)
      .def_readwrite("drift_center", &ExperimentConfig::drift_center)
      .def_readwrite("drift_width", &ExperimentConfig::drift_width)
      .def_readwrite("perturbation", &ExperimentConfig::perturbation)
      .def_readwrite("subgroup_tolerance", &ExperimentConfig::subgroup_tolerance)
      .def_readwrite("subgroup_max_iter", &ExperimentConfig::subgroup_max_iter)
      .def_readwrite("calibration_fraction", &ExperimentConfig::calibration_fraction)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("threads", &ExperimentConfig::threads)
      .def_readwrite("write_traces", &ExperimentConfig::write_traces)
      .def_readwrite("detectors", &ExperimentConfig::detectors)
      .def_property_readonly("detector_names",
                             [](const ExperimentConfig& cfg) {
                               std::vector<std::string> names;
                               for (const auto& d : cfg.detectors) {
                                 names.push_back(detector_name(d));
                               }
                               return names;
                             })
      .def("validate", &ExperimentConfig::validate);

  py::class_<RunSpec>(m, "RunSpec")
      .def(py::init<>())
      .def_readwrite("run_id", &RunSpec::run_id)
      .def_readwrite("target_size", &RunSpec::target_size)
      .def_readwrite("positive", &RunSpec::positive);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("run_id", &RunResult::run_id)
      .def_readonly("target_size", &RunResult::target_size)
      .def_readonly("positive", &RunResult::positive)
      .def_readonly("concept_orig", &RunResult::concept_orig)
      .def_readonly("concept_drift", &RunResult::concept_drift)
      .def_readonly("subgroup", &RunResult::subgroup)
      .def_readonly("computed_size", &RunResult::computed_size)
      .def_readonly("residual_gap", &RunResult::residual_gap)
      .def_readonly("subgroup_converged", &RunResult::subgroup_converged)
      .def_readonly("training_accuracy", &RunResult::training_accuracy)
      .def_readonly("detection_counts", &RunResult::detection_counts)
      .def_readonly("batch_accuracy", &RunResult::batch_accuracy)
      .def_readonly("batch_subgroup_accuracy", &RunResult::batch_subgroup_accuracy);

  m.def("run_spec", &run_spec, py::arg("config"), py::arg("run_id"));
  m.def("run_experiment", &run_experiment, py::arg("config"), py::arg("spec"),
        py::call_guard<py::gil_scoped_release>());
  m.def("run_all", &run_all, py::arg("config"), py::call_guard<py::gil_scoped_release>());
  m.def("youden_threshold", &youden_threshold, py::arg("calibration_runs"));
  m.def("calibrate_thresholds", &calibrate_thresholds, py::arg("config"),
        py::arg("results"));

  py::class_<MetricsRow>(m, "MetricsRow")
      .def_readonly("detector", &MetricsRow::detector)
      .def_readonly("target_size", &MetricsRow::target_size)
      .def_readonly("accuracy", &MetricsRow::accuracy)
      .def_readonly("f1", &MetricsRow::f1)
      .def_readonly("fpr", &MetricsRow::fpr)
      .def_readonly("fnr", &MetricsRow::fnr)
      .def_readonly("threshold", &MetricsRow::threshold);

  m.def("evaluate", &evaluate, py::arg("config"), py::arg("results"),
        py::arg("thresholds"));
  m.def(
      "parse_config_file",
      [](const std::string& path) { return parse_config_file(path); },
      py::arg("path"));
}
