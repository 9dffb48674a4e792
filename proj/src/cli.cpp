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

#include "ddf/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include "ddf/error.hpp"
#include "ddf/evaluation.hpp"
#include "ddf/filters.hpp"
#include "ddf/io.hpp"
#include "ddf/optimize.hpp"
#include "ddf/reconstruction.hpp"
#include "ddf/synthdata.hpp"

namespace ddf {

namespace {

namespace fs = std::filesystem;

Task parse_task(const std::string& s) {
  if (s == "A" || s == "a") return Task::A;
  if (s == "B" || s == "b") return Task::B;
  throw InvalidArgument("task must be A or B, got '" + s + "'");
}

std::vector<double> parse_gamma_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) throw InvalidArgument("empty entry in gamma list");
    out.push_back(parse_double(item));
  }
  if (out.empty()) throw InvalidArgument("gamma list is empty");
  return out;
}

void write_eval_header(std::ostream& os) { os << "leg,two_afc_a,two_afc_b,JstarA,JstarB\n"; }

void write_eval_row(std::ostream& os, const std::string& leg, const EvalReport& r) {
  os << leg << ',' << format_double(r.two_afc_a) << ',' << format_double(r.two_afc_b) << ','
     << format_double(r.j_star_a) << ',' << format_double(r.j_star_b) << '\n';
}

struct GenPointsArgs {
  int n_per_cell = 7;
  double sigma = kClusterSigma;
  std::uint64_t seed = 0;
  std::string out;
};

struct GenLinesArgs {
  LineImageSpec spec;
  std::string out;
};

struct GenCorrArgs {
  CorrelationSpec spec;
  std::string out;
};

struct LearnArgs {
  std::string data;
  std::string filter = "conv:5";
  std::string init;
  std::string preserve = "A";
  std::string suppress;
  double alpha = kDefaultAlpha;
  double beta = 0.5;
  int iters = -1;
  int evals = -1;
  std::string optimizer = "gd";
  std::uint64_t seed = 0;
  std::string out;
};

struct ApplyArgs {
  std::string data;
  std::string filter;
  std::string out;
};

struct FitReconArgs {
  std::string original;
  std::string filtered;
  std::string gamma;
  double alpha = kDefaultAlpha;
  bool unsafe_zero_gamma = false;
  std::string out;
};

struct ReconArgs {
  std::string model;
  std::string data;
  std::string out;
};

struct EvalArgs {
  std::string train;
  std::string test;
  std::string filter;
  double alpha = kDefaultAlpha;
  int pairs = 0;
  std::uint64_t seed = 0;
  std::string out;
};

struct PgmArgs {
  std::string data;
  std::string matrix;
  long index = 0;
  std::string out;
};

int cmd_learn(const LearnArgs& a, std::ostream& out, std::ostream& err) {
  const Dataset ds = load_dataset(a.data);
  ObjectiveConfig cfg;
  cfg.alpha = a.alpha;
  cfg.beta = a.beta;
  cfg.preserve = parse_task(a.preserve);
  if (!a.suppress.empty() && parse_task(a.suppress) != cfg.suppress()) {
    throw InvalidArgument("--suppress must name the task not preserved");
  }
  if (a.optimizer == "gd") {
    cfg.optimizer = Optimizer::GradientDescent;
    cfg.max_iters = a.iters >= 0 ? a.iters : 50;
    cfg.max_evals = a.evals > 0 ? a.evals : std::numeric_limits<int>::max();
  } else if (a.optimizer == "cg") {
    cfg.optimizer = Optimizer::ConjugateGradient;
    cfg.max_iters = a.iters >= 0 ? a.iters : std::numeric_limits<int>::max();
    cfg.max_evals = a.evals > 0 ? a.evals : 100;
  } else {
    throw InvalidArgument("--optimizer must be gd or cg");
  }
  cfg.seed = a.seed;

  Rng rng(a.seed);
  FilterParams theta0 = a.init.empty() ? init_filter(a.filter, ds.dim(), rng) : load_filter(a.init);
  const MinimizeResult res = minimize(ds, theta0, cfg);

  const fs::path dir(a.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "'");
  save_filter(dir / "filter.flt", res.theta);
  {
    std::ofstream trace(dir / "trace.csv", std::ios::binary);
    if (!trace) throw IoError("cannot write trace");
    res.trace.write_csv(trace);
  }

  const auto& first = res.trace.records.front();
  out << "iterations " << res.trace.accepted().size() - 1 << ", evaluations "
      << res.trace.records.size() << ", stop: " << stop_reason_name(res.stop) << '\n';
  out << "R " << format_double(first.r) << " -> " << format_double(res.final_value.r) << '\n';
  out << "JstarA " << format_double(first.j_star_a) << " -> "
      << format_double(res.final_value.j_star_a) << '\n';
  out << "JstarB " << format_double(first.j_star_b) << " -> "
      << format_double(res.final_value.j_star_b) << '\n';
  if (res.final_value.floor_active) err << "warning: J* reached the eps floor\n";
  if (res.line_search_failed) {
    err << "error: line search failed; best iterate written\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_fit_recon(const FitReconArgs& a, std::ostream& out) {
  const Dataset original = load_dataset(a.original);
  const Dataset filtered = load_dataset(a.filtered);
  if (original.size() != filtered.size()) {
    throw DimensionMismatch("original and filtered datasets differ in size");
  }
  const auto gammas = parse_gamma_list(a.gamma);
  ReconstructionOptions opts;
  opts.allow_zero_gamma = a.unsafe_zero_gamma;
  opts.least_squares_fallback = a.unsafe_zero_gamma;

  const fs::path dir(a.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "'");
  std::ofstream sweep(dir / "sweep.csv", std::ios::binary);
  if (!sweep) throw IoError("cannot write sweep.csv");
  sweep << "gamma,mean_abs_error,JstarA,JstarB\n";
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    const ReconstructionModel model =
        fit_reconstruction(original.samples(), filtered.samples(), gammas[i], opts);
    const std::string name = gammas.size() == 1 ? "model.rcn" : "model_" + std::to_string(i) + ".rcn";
    save_reconstruction(dir / name, model);
    const Eigen::MatrixXd g = reconstruct(model, filtered.samples());
    const double mae = (g - original.samples()).cwiseAbs().mean();
    const Dataset rec = original.with_samples(g);
    const double ja = fisher_J_star(split_by_task(rec, Task::A), a.alpha);
    const double jb = fisher_J_star(split_by_task(rec, Task::B), a.alpha);
    sweep << format_double(gammas[i]) << ',' << format_double(mae) << ',' << format_double(ja)
          << ',' << format_double(jb) << '\n';
    out << name << ": gamma " << format_double(gammas[i]) << ", mean |g - x| "
        << format_double(mae) << ", JstarA " << format_double(ja) << ", JstarB "
        << format_double(jb) << '\n';
  }
  return kExitOk;
}

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const Dataset train = load_dataset(a.train);
  const Dataset test = a.test.empty() ? train : load_dataset(a.test);
  std::optional<FilterParams> filter;
  if (!a.filter.empty()) filter = load_filter(a.filter);
  const PairPolicy policy{a.pairs, a.seed};
  const ShiftReport report = covariate_shift_experiment(train, test, filter, a.alpha, Task::A, policy);

  std::ostringstream csv;
  write_eval_header(csv);
  write_eval_row(csv, "unfiltered", report.unfiltered);
  if (report.filtered) write_eval_row(csv, "filtered", *report.filtered);
  out << csv.str();
  if (!a.out.empty()) {
    std::ofstream os(a.out, std::ios::binary);
    if (!os) throw IoError("cannot write '" + a.out + "'");
    os << csv.str();
  }
  return kExitOk;
}

int cmd_pgm(const PgmArgs& a) {
  Eigen::MatrixXd x;
  if (!a.matrix.empty()) {
    x = load_matrix(a.matrix);
  } else if (!a.data.empty()) {
    x = load_dataset(a.data).samples();
  } else {
    throw InvalidArgument("pgm needs --data or --matrix");
  }
  if (a.index < 0 || a.index >= x.cols()) throw IndexOutOfRange("column index out of range");
  const auto side = static_cast<int>(image_side(x.rows()));
  export_pgm(x.col(a.index), side, a.out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Learn filters that preserve one binary task and suppress another"};
  app.require_subcommand(1);

  std::function<int()> action;

  GenPointsArgs gp;
  auto* gen_points = app.add_subcommand("gen-points", "four-cluster two-task points in R^2");
  gen_points->add_option("--n-per-cell", gp.n_per_cell, "points per (A, B) cell")->capture_default_str();
  gen_points->add_option("--sigma", gp.sigma, "cluster standard deviation")->capture_default_str();
  gen_points->add_option("--seed", gp.seed)->capture_default_str();
  gen_points->add_option("--out", gp.out, "output dataset directory")->required();
  gen_points->callback([&] {
    action = [&] {
      save_dataset(gp.out, gen_two_task_points(gp.n_per_cell, gp.seed, gp.sigma));
      return kExitOk;
    };
  });

  GenLinesArgs gl;
  auto* gen_lines = app.add_subcommand("gen-lines", "vertical/horizontal line images");
  gen_lines->add_option("--n", gl.spec.n_images)->capture_default_str();
  gen_lines->add_option("--side", gl.spec.side)->capture_default_str();
  gen_lines->add_option("--noise", gl.spec.noise_high, "upper bound of U[0, noise)")->capture_default_str();
  gen_lines->add_option("--intensity", gl.spec.line_intensity)->capture_default_str();
  gen_lines->add_option("--seed", gl.spec.seed)->capture_default_str();
  gen_lines->add_option("--out", gl.out)->required();
  gen_lines->callback([&] {
    action = [&] {
      save_dataset(gl.out, gen_line_images(gl.spec).dataset);
      return kExitOk;
    };
  });

  GenCorrArgs gc;
  auto* gen_corr = app.add_subcommand("gen-corr", "line images with correlated labels");
  gen_corr->add_option("--n", gc.spec.n_images)->capture_default_str();
  gen_corr->add_option("--side", gc.spec.side)->capture_default_str();
  gen_corr->add_option("--rho", gc.spec.target_corr, "label correlation")->required();
  gen_corr->add_option("--noise", gc.spec.noise_high)->capture_default_str();
  gen_corr->add_option("--intensity-a", gc.spec.line_intensity_a)->capture_default_str();
  gen_corr->add_option("--intensity-b", gc.spec.line_intensity_b)->capture_default_str();
  gen_corr->add_option("--seed", gc.spec.seed)->capture_default_str();
  gen_corr->add_option("--out", gc.out)->required();
  gen_corr->callback([&] {
    action = [&] {
      save_dataset(gc.out, gen_correlated_lines(gc.spec).dataset);
      return kExitOk;
    };
  });

  LearnArgs la;
  auto* learn = app.add_subcommand("learn", "learn a filter by minimizing the ratio objective");
  learn->add_option("--data", la.data, "dataset directory")->required();
  learn->add_option("--filter", la.filter, "conv:K, mask or linear")->capture_default_str();
  learn->add_option("--init", la.init, "start from this filter file instead of a random one");
  learn->add_option("--preserve", la.preserve)->capture_default_str();
  learn->add_option("--suppress", la.suppress);
  learn->add_option("--alpha", la.alpha)->capture_default_str();
  learn->add_option("--beta", la.beta)->capture_default_str();
  learn->add_option("--iters", la.iters, "accepted steps (default 50 for gd)");
  learn->add_option("--evals", la.evals, "evaluation budget (default 100 for cg)");
  learn->add_option("--optimizer", la.optimizer, "gd or cg")->capture_default_str();
  learn->add_option("--seed", la.seed)->capture_default_str();
  learn->add_option("--out", la.out, "directory for filter.flt and trace.csv")->required();
  learn->callback([&] { action = [&] { return cmd_learn(la, out, err); }; });

  ApplyArgs aa;
  auto* apply = app.add_subcommand("apply", "filter every sample of a dataset");
  apply->add_option("--data", aa.data)->required();
  apply->add_option("--filter", aa.filter)->required();
  apply->add_option("--out", aa.out)->required();
  apply->callback([&] {
    action = [&] {
      save_dataset(aa.out, apply_filter_batch(load_filter(aa.filter), load_dataset(aa.data)).data);
      return kExitOk;
    };
  });

  FitReconArgs fa;
  auto* fit = app.add_subcommand("fit-recon", "fit ridge reconstruction maps");
  fit->add_option("--original", fa.original)->required();
  fit->add_option("--filtered", fa.filtered)->required();
  fit->add_option("--gamma", fa.gamma, "ridge strength or comma-separated sweep")->required();
  fit->add_option("--alpha", fa.alpha)->capture_default_str();
  fit->add_flag("--unsafe-zero-gamma", fa.unsafe_zero_gamma, "permit gamma = 0");
  fit->add_option("--out", fa.out)->required();
  fit->callback([&] { action = [&] { return cmd_fit_recon(fa, out); }; });

  ReconArgs ra;
  auto* recon = app.add_subcommand("recon", "reconstruct filtered samples");
  recon->add_option("--model", ra.model)->required();
  recon->add_option("--data", ra.data)->required();
  recon->add_option("--out", ra.out)->required();
  recon->callback([&] {
    action = [&] {
      const Dataset ds = load_dataset(ra.data);
      const ReconstructionModel model = load_reconstruction(ra.model);
      save_dataset(ra.out, ds.with_samples(reconstruct(model, ds.samples())));
      return kExitOk;
    };
  });

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "LDA 2AFC and J* for both tasks");
  eval->add_option("--train", ea.train)->required();
  eval->add_option("--test", ea.test, "defaults to the training set");
  eval->add_option("--filter", ea.filter, "also report a filtered leg");
  eval->add_option("--alpha", ea.alpha)->capture_default_str();
  eval->add_option("--pairs", ea.pairs, "random pairs per task; 0 uses every pair")->capture_default_str();
  eval->add_option("--seed", ea.seed)->capture_default_str();
  eval->add_option("--out", ea.out, "also write the CSV here");
  eval->callback([&] { action = [&] { return cmd_eval(ea, out); }; });

  PgmArgs pa;
  auto* pgm = app.add_subcommand("pgm", "export one sample as a PGM image");
  pgm->add_option("--data", pa.data);
  pgm->add_option("--matrix", pa.matrix);
  pgm->add_option("--index", pa.index)->capture_default_str();
  pgm->add_option("--out", pa.out)->required();
  pgm->callback([&] { action = [&] { return cmd_pgm(pa); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    for (const auto* sub : app.get_subcommands()) err << sub->help();
    if (app.get_subcommands().empty()) err << app.help();
    return kExitUsage;
  }

  try {
    return action();
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace ddf
