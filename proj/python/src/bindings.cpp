// Copyright 2026 The ddf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "ddf/cli.hpp"
#include "ddf/error.hpp"
#include "ddf/evaluation.hpp"
#include "ddf/filters.hpp"
#include "ddf/fisher.hpp"
#include "ddf/io.hpp"
#include "ddf/objective.hpp"
#include "ddf/optimize.hpp"
#include "ddf/reconstruction.hpp"
#include "ddf/synthdata.hpp"

namespace py = pybind11;
using namespace ddf;

namespace {

py::array_t<std::uint8_t> to_array(const Labels& y) {
  py::array_t<std::uint8_t> out(static_cast<py::ssize_t>(y.size()));
  std::copy(y.begin(), y.end(), out.mutable_data());
  return out;
}

Labels to_labels(const py::array_t<long long, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw InvalidArgument("labels must be one-dimensional");
  Labels y(static_cast<std::size_t>(a.size()));
  for (py::ssize_t i = 0; i < a.size(); ++i) {
    const long long v = a.data()[i];
    if (v != 0 && v != 1) throw InvalidArgument("labels must be 0 or 1");
    y[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
  }
  return y;
}

py::dict trace_dict(const DescentTrace& t) {
  const auto n = static_cast<py::ssize_t>(t.records.size());
  py::array_t<int> eval(n), iteration(n);
  py::array_t<double> r(n), ja(n), jb(n), gn(n), step(n);
  py::array_t<bool> accepted(n);
  for (py::ssize_t i = 0; i < n; ++i) {
    const TraceRecord& rec = t.records[static_cast<std::size_t>(i)];
    eval.mutable_data()[i] = rec.eval;
    iteration.mutable_data()[i] = rec.iteration;
    r.mutable_data()[i] = rec.r;
    ja.mutable_data()[i] = rec.j_star_a;
    jb.mutable_data()[i] = rec.j_star_b;
    gn.mutable_data()[i] = rec.grad_norm;
    step.mutable_data()[i] = rec.step;
    accepted.mutable_data()[i] = rec.accepted;
  }
  py::dict d;
  d["eval"] = eval;
  d["iteration"] = iteration;
  d["R"] = r;
  d["JstarA"] = ja;
  d["JstarB"] = jb;
  d["gradnorm"] = gn;
  d["step"] = step;
  d["accepted"] = accepted;
  return d;
}

}  // namespace

PYBIND11_MODULE(_ddf, m) {
  m.doc() = "Filters that preserve one binary task and suppress another";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto invalid = py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", invalid.ptr());
  py::register_exception<IndexOutOfRange>(m, "IndexOutOfRange", invalid.ptr());
  py::register_exception<EmptyClass>(m, "EmptyClass", invalid.ptr());
  py::register_exception<ZeroDirection>(m, "ZeroDirection", invalid.ptr());
  py::register_exception<EmptyPairs>(m, "EmptyPairs", invalid.ptr());
  py::register_exception<InvalidCorrelation>(m, "InvalidCorrelation", invalid.ptr());
  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", error.ptr());
  py::register_exception<SingularWithin>(m, "SingularWithin", numerical.ptr());
  py::register_exception<SingularSystem>(m, "SingularSystem", numerical.ptr());
  py::register_exception<NonFinite>(m, "NonFinite", numerical.ptr());
  py::register_exception<LineSearchFailure>(m, "LineSearchFailure", numerical.ptr());
  auto io = py::register_exception<IoError>(m, "IoError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", io.ptr());

  py::enum_<Task>(m, "Task").value("A", Task::A).value("B", Task::B);
  py::enum_<FilterKind>(m, "FilterKind")
      .value("Convolution", FilterKind::Convolution)
      .value("Mask", FilterKind::Mask)
      .value("Linear", FilterKind::Linear);
  py::enum_<Optimizer>(m, "Optimizer")
      .value("GradientDescent", Optimizer::GradientDescent)
      .value("ConjugateGradient", Optimizer::ConjugateGradient);

  py::class_<Dataset>(m, "Dataset")
      .def(py::init([](Eigen::MatrixXd x, const py::array_t<long long, py::array::c_style | py::array::forcecast>& a,
                       const py::array_t<long long, py::array::c_style | py::array::forcecast>& b) {
             return Dataset(std::move(x), to_labels(a), to_labels(b));
           }),
           py::arg("samples"), py::arg("labels_a"), py::arg("labels_b"))
      .def_property_readonly("samples", &Dataset::samples)
      .def_property_readonly("labels_a", [](const Dataset& d) { return to_array(d.labels_a()); })
      .def_property_readonly("labels_b", [](const Dataset& d) { return to_array(d.labels_b()); })
      .def("labels", [](const Dataset& d, Task t) { return to_array(d.labels(t)); })
      .def_property_readonly("global_mean", &Dataset::global_mean)
      .def_property_readonly("dim", &Dataset::dim)
      .def_property_readonly("size", &Dataset::size)
      .def("with_samples", &Dataset::with_samples)
      .def("slice", &Dataset::slice);

  py::class_<FisherStats>(m, "FisherStats")
      .def_readonly("between", &FisherStats::between)
      .def_readonly("within", &FisherStats::within)
      .def_readonly("within_reg", &FisherStats::within_reg)
      .def_readonly("mean_diff", &FisherStats::mean_diff)
      .def_readonly("alpha", &FisherStats::alpha);
  m.def(
      "fisher_stats",
      [](const Dataset& ds, Task t, double alpha) { return compute_stats(split_by_task(ds, t), alpha); },
      py::arg("dataset"), py::arg("task"), py::arg("alpha") = kDefaultAlpha);
  m.def(
      "fisher_J", [](const FisherStats& s, const Eigen::VectorXd& p) { return fisher_J(s, p); }, py::arg("stats"),
      py::arg("p"));
  m.def(
      "optimal_discriminant",
      [](const FisherStats& s) {
        const Discriminant d = optimal_discriminant(s);
        return py::make_tuple(d.direction, d.degenerate_means);
      },
      py::arg("stats"));
  m.def(
      "fisher_J_star", [](const FisherStats& s) { return fisher_J_star(s); }, py::arg("stats"));
  m.def(
      "task_J_star", [](const Dataset& ds, Task t, double alpha) { return fisher_J_star(split_by_task(ds, t), alpha); },
      py::arg("dataset"), py::arg("task"), py::arg("alpha") = kDefaultAlpha);

  py::class_<FilterParams>(m, "FilterParams")
      .def_static("convolution", &FilterParams::convolution, py::arg("kernel_side"), py::arg("theta"))
      .def_static("mask", &FilterParams::mask, py::arg("theta"))
      .def_static("linear", &FilterParams::linear, py::arg("dim"), py::arg("theta"))
      .def_property_readonly("kind", &FilterParams::kind)
      .def_property_readonly("shape", &FilterParams::shape)
      .def_property_readonly("theta", &FilterParams::theta)
      .def_property_readonly("param_count", &FilterParams::param_count)
      .def("with_theta", &FilterParams::with_theta)
      .def("__repr__", [](const FilterParams& fp) {
        return std::string("FilterParams(") + kind_name(fp.kind()) + ", " + std::to_string(fp.shape()) + ")";
      });
  m.def(
      "apply_filter", [](const FilterParams& fp, const Eigen::MatrixXd& x) { return apply_filter(fp, x); },
      py::arg("filter"), py::arg("samples"), "Filter every column of a d x N matrix.");
  m.def(
      "apply_filter_dataset", [](const FilterParams& fp, const Dataset& ds) { return apply_filter_batch(fp, ds).data; },
      py::arg("filter"), py::arg("dataset"));
  m.def("filter_jacobian_column", &filter_jacobian_column, py::arg("filter"), py::arg("x"), py::arg("j"));
  m.def(
      "init_filter",
      [](const std::string& spec, Eigen::Index dim, std::uint64_t seed) {
        Rng rng(seed);
        return init_filter(spec, dim, rng);
      },
      py::arg("spec"), py::arg("dim"), py::arg("seed") = 0);

  py::class_<ObjectiveConfig>(m, "ObjectiveConfig")
      .def(py::init<>())
      .def_readwrite("alpha", &ObjectiveConfig::alpha)
      .def_readwrite("beta", &ObjectiveConfig::beta)
      .def_readwrite("eps_floor", &ObjectiveConfig::eps_floor)
      .def_readwrite("preserve", &ObjectiveConfig::preserve)
      .def_readwrite("optimizer", &ObjectiveConfig::optimizer)
      .def_readwrite("max_iters", &ObjectiveConfig::max_iters)
      .def_readwrite("max_evals", &ObjectiveConfig::max_evals)
      .def_readwrite("initial_step", &ObjectiveConfig::initial_step)
      .def_readwrite("shrink", &ObjectiveConfig::shrink)
      .def_readwrite("grow", &ObjectiveConfig::grow)
      .def_readwrite("armijo", &ObjectiveConfig::armijo)
      .def_readwrite("max_backtracks", &ObjectiveConfig::max_backtracks)
      .def_readwrite("grad_tol", &ObjectiveConfig::grad_tol)
      .def_readwrite("rel_tol", &ObjectiveConfig::rel_tol)
      .def_readwrite("snapshot_stride", &ObjectiveConfig::snapshot_stride)
      .def_readwrite("seed", &ObjectiveConfig::seed)
      .def("validate", &ObjectiveConfig::validate);

  py::class_<ObjectiveValue>(m, "ObjectiveValue")
      .def_readonly("R", &ObjectiveValue::r)
      .def_readonly("JstarA", &ObjectiveValue::j_star_a)
      .def_readonly("JstarB", &ObjectiveValue::j_star_b)
      .def_readonly("gradient", &ObjectiveValue::gradient)
      .def_readonly("floor_active", &ObjectiveValue::floor_active);
  m.def("evaluate_objective", &evaluate_objective, py::arg("filter"), py::arg("dataset"), py::arg("config"),
        py::arg("with_gradient") = true);
  m.def("ratio_objective", &ratio_objective, py::arg("filter"), py::arg("dataset"), py::arg("config"));
  m.def("ratio_gradient", &ratio_gradient, py::arg("filter"), py::arg("dataset"), py::arg("config"));

  py::class_<MinimizeResult>(m, "MinimizeResult")
      .def_readonly("theta", &MinimizeResult::theta)
      .def_property_readonly("stop", [](const MinimizeResult& r) { return std::string(stop_reason_name(r.stop)); })
      .def_readonly("line_search_failed", &MinimizeResult::line_search_failed)
      .def_readonly("final_value", &MinimizeResult::final_value)
      .def_property_readonly("trace", [](const MinimizeResult& r) { return trace_dict(r.trace); })
      .def("trace_csv", [](const MinimizeResult& r) {
        std::ostringstream os;
        r.trace.write_csv(os);
        return os.str();
      });
  m.def("minimize", &minimize, py::arg("dataset"), py::arg("theta0"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<ReconstructionModel>(m, "ReconstructionModel")
      .def(py::init([](Eigen::MatrixXd p, double gamma) { return ReconstructionModel{std::move(p), gamma}; }),
           py::arg("map_p"), py::arg("gamma"))
      .def_readonly("map_p", &ReconstructionModel::map_p)
      .def_readonly("gamma", &ReconstructionModel::gamma);
  m.def(
      "fit_reconstruction",
      [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& f, double gamma, bool allow_zero, bool fallback) {
        return fit_reconstruction(x, f, gamma, ReconstructionOptions{allow_zero, fallback});
      },
      py::arg("originals"), py::arg("filtered"), py::arg("gamma"), py::arg("allow_zero_gamma") = false,
      py::arg("least_squares_fallback") = false);
  m.def(
      "reconstruct",
      [](const ReconstructionModel& model, const Eigen::MatrixXd& f) { return reconstruct(model, f); },
      py::arg("model"), py::arg("filtered"));
  m.def("reconstruction_objective", &reconstruction_objective, py::arg("map_p"), py::arg("originals"),
        py::arg("filtered"), py::arg("gamma"));

  m.def("gen_two_task_points", &gen_two_task_points, py::arg("n_per_cell"), py::arg("seed"),
        py::arg("sigma") = kClusterSigma);
  py::class_<LineImages>(m, "LineImages")
      .def_readonly("dataset", &LineImages::dataset)
      .def_readonly("columns", &LineImages::columns)
      .def_readonly("rows", &LineImages::rows);
  m.def(
      "gen_line_images",
      [](int n, int side, double noise, double intensity, std::uint64_t seed) {
        return gen_line_images(LineImageSpec{n, side, noise, intensity, seed});
      },
      py::arg("n_images") = 1000, py::arg("side") = 16, py::arg("noise_high") = 0.5, py::arg("line_intensity") = 1.0,
      py::arg("seed") = 0);
  m.def(
      "gen_correlated_lines",
      [](double rho, int n, int side, double noise, double ia, double ib, std::uint64_t seed) {
        return gen_correlated_lines(CorrelationSpec{n, side, rho, noise, ia, ib, seed});
      },
      py::arg("target_corr"), py::arg("n_images") = 1000, py::arg("side") = 16, py::arg("noise_high") = 0.5,
      py::arg("line_intensity_a") = 1.0, py::arg("line_intensity_b") = 1.0, py::arg("seed") = 0);
  m.def(
      "label_correlation",
      [](const py::array_t<long long, py::array::c_style | py::array::forcecast>& a,
         const py::array_t<long long, py::array::c_style | py::array::forcecast>& b) {
        return label_correlation(to_labels(a), to_labels(b));
      },
      py::arg("a"), py::arg("b"));

  py::class_<LdaClassifier>(m, "LdaClassifier")
      .def_readonly("direction", &LdaClassifier::direction)
      .def_readonly("threshold", &LdaClassifier::threshold)
      .def_readonly("degenerate_means", &LdaClassifier::degenerate_means)
      .def("scores", &LdaClassifier::scores)
      .def("predict", [](const LdaClassifier& c, const Eigen::MatrixXd& x) {
        py::array_t<int> out(x.cols());
        for (Eigen::Index i = 0; i < x.cols(); ++i) out.mutable_data()[i] = c.predict(x.col(i));
        return out;
      });
  m.def("train_lda", &train_lda, py::arg("dataset"), py::arg("task"), py::arg("alpha") = kDefaultAlpha);
  m.def(
      "two_afc",
      [](const LdaClassifier& clf, const Eigen::MatrixXd& x,
         const py::array_t<long long, py::array::c_style | py::array::forcecast>& labels, int n_pairs,
         std::uint64_t seed) {
        const Labels y = to_labels(labels);
        return two_afc(clf, x, n_pairs > 0 ? sample_pairs(y, n_pairs, seed) : all_pairs(y));
      },
      py::arg("classifier"), py::arg("samples"), py::arg("labels"), py::arg("n_pairs") = 0, py::arg("seed") = 0);
  m.def(
      "two_afc_scores",
      [](const std::vector<std::pair<double, double>>& pairs) { return two_afc(pairs); }, py::arg("scored_pairs"));
  m.def("separable", &separable, py::arg("x0"), py::arg("x1"));

  py::class_<EvalReport>(m, "EvalReport")
      .def_readonly("two_afc_a", &EvalReport::two_afc_a)
      .def_readonly("two_afc_b", &EvalReport::two_afc_b)
      .def_readonly("JstarA", &EvalReport::j_star_a)
      .def_readonly("JstarB", &EvalReport::j_star_b)
      .def_readonly("notes", &EvalReport::notes);
  m.def(
      "evaluate",
      [](const Dataset& train, const Dataset& test, double alpha, int n_pairs, std::uint64_t seed) {
        return evaluate(train, test, alpha, PairPolicy{n_pairs, seed});
      },
      py::arg("train"), py::arg("test"), py::arg("alpha") = kDefaultAlpha, py::arg("n_pairs") = 0,
      py::arg("seed") = 0);
  py::class_<ShiftReport>(m, "ShiftReport")
      .def_readonly("preserved", &ShiftReport::preserved)
      .def_readonly("unfiltered", &ShiftReport::unfiltered)
      .def_readonly("filtered", &ShiftReport::filtered);
  m.def(
      "covariate_shift_experiment",
      [](const Dataset& train, const Dataset& test, const std::optional<FilterParams>& filter, double alpha,
         Task preserved, int n_pairs, std::uint64_t seed) {
        return covariate_shift_experiment(train, test, filter, alpha, preserved, PairPolicy{n_pairs, seed});
      },
      py::arg("train"), py::arg("test"), py::arg("filter") = std::nullopt, py::arg("alpha") = kDefaultAlpha,
      py::arg("preserved") = Task::A, py::arg("n_pairs") = 0, py::arg("seed") = 0);

  m.def("save_dataset", &save_dataset, py::arg("dir"), py::arg("dataset"));
  m.def("load_dataset", &load_dataset, py::arg("dir"));
  m.def("save_matrix", &save_matrix, py::arg("path"), py::arg("matrix"));
  m.def("load_matrix", &load_matrix, py::arg("path"));
  m.def("save_filter", &save_filter, py::arg("path"), py::arg("filter"));
  m.def("load_filter", &load_filter, py::arg("path"));
  m.def("save_reconstruction", &save_reconstruction, py::arg("path"), py::arg("model"));
  m.def("load_reconstruction", &load_reconstruction, py::arg("path"));
  m.def("export_pgm", &export_pgm, py::arg("image"), py::arg("side"), py::arg("path"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command line tool in-process; returns (exit code, stdout, stderr).");
}
