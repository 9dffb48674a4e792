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

#include "ddf/objective.hpp"

#include <cmath>
#include <string>

#include "ddf/error.hpp"

namespace ddf {

void ObjectiveConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in [0, 1]");
  if (!(beta >= 0.0)) throw InvalidArgument("beta must be non-negative");
  if (!(eps_floor > 0.0)) throw InvalidArgument("eps_floor must be positive");
  if (max_iters < 0 || max_evals < 1) throw InvalidArgument("iteration budget must be positive");
  if (!(initial_step > 0.0)) throw InvalidArgument("initial_step must be positive");
  if (!(shrink > 0.0 && shrink < 1.0)) throw InvalidArgument("shrink must lie in (0, 1)");
  if (!(grow >= 1.0)) throw InvalidArgument("grow must be at least 1");
  if (!(armijo > 0.0 && armijo < 1.0)) throw InvalidArgument("armijo must lie in (0, 1)");
  if (max_backtracks < 1) throw InvalidArgument("max_backtracks must be positive");
  if (snapshot_stride < 0) throw InvalidArgument("snapshot_stride must be non-negative");
}

double task_j_star(const FilterParams& fp, const Eigen::MatrixXd& originals,
                   const Eigen::MatrixXd& filtered, const Labels& labels, double alpha,
                   Eigen::VectorXd* gradient) {
  const ClassSplit split = split_by_labels(filtered, labels);
  const FisherStats stats = compute_stats(split, alpha);
  const Eigen::Index d = filtered.rows();
  const Eigen::Index n = filtered.cols();

  if (stats.mean_diff.isZero(0.0)) {
    // J* = m' W^-1 m is quadratic in m, so both value and gradient vanish.
    if (gradient != nullptr) gradient->setZero(fp.param_count());
    return 0.0;
  }

  const auto llt = factor_within(stats.within_reg);
  const Eigen::VectorXd p = llt.solve(stats.mean_diff);
  const Eigen::VectorXd wp = stats.within_reg * p;
  const double proj = p.dot(stats.mean_diff);
  const double num = proj * proj;
  const double den = p.dot(wp);
  const double j_star = num / den;
  if (gradient == nullptr) return j_star;

  const double n0 = static_cast<double>(split.x0.cols());
  const double n1 = static_cast<double>(split.x1.cols());

  // Filtered samples centered on their own class mean, in dataset order.
  Eigen::MatrixXd centered(d, n);
  Eigen::VectorXd class_sign(n);  // +1/N1 for class 1, -1/N0 for class 0
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool one = labels[static_cast<std::size_t>(i)] != 0;
    centered.col(i) = filtered.col(i) - (one ? split.mean1 : split.mean0);
    class_sign[i] = one ? 1.0 / n1 : -1.0 / n0;
  }
  const Eigen::VectorXd s = centered.transpose() * p;  // g_i' p

  gradient->resize(fp.param_count());
  Eigen::MatrixXd cols;
  for (Eigen::Index j = 0; j < fp.param_count(); ++j) {
    filter_jacobian_columns(fp, originals, j, cols);
    // d(mean1 - mean0) / d theta_j
    const Eigen::VectorXd dm = cols * class_sign;
    const Eigen::VectorXd t = cols.transpose() * p;  // (d f_i / d theta_j)' p
    // Class sums of centered vectors are zero, so the derivative of each
    // centered column can use the raw Jacobian column in dW p.
    const Eigen::VectorXd dw_p = (1.0 - alpha) * (cols * s + centered * t);
    const double p_dw_p = 2.0 * (1.0 - alpha) * s.dot(t);
    const Eigen::VectorXd dp = llt.solve(dm - dw_p);

    const double dnum = 2.0 * proj * (dp.dot(stats.mean_diff) + p.dot(dm));
    const double dden = 2.0 * dp.dot(wp) + p_dw_p;
    (*gradient)[j] = dnum / den - num / (den * den) * dden;
  }
  return j_star;
}

ObjectiveValue evaluate_objective(const FilterParams& fp, const Dataset& ds,
                                  const ObjectiveConfig& cfg, bool with_gradient) {
  cfg.validate();
  const Eigen::MatrixXd filtered = apply_filter(fp, ds.samples());

  Eigen::VectorXd grad_a;
  Eigen::VectorXd grad_b;
  ObjectiveValue out;
  out.j_star_a = task_j_star(fp, ds.samples(), filtered, ds.labels_a(), cfg.alpha,
                             with_gradient ? &grad_a : nullptr);
  out.j_star_b = task_j_star(fp, ds.samples(), filtered, ds.labels_b(), cfg.alpha,
                             with_gradient ? &grad_b : nullptr);

  const bool preserve_a = cfg.preserve == Task::A;
  const double j_keep = preserve_a ? out.j_star_a : out.j_star_b;
  const double j_drop = preserve_a ? out.j_star_b : out.j_star_a;
  const bool keep_floored = !(j_keep > cfg.eps_floor);
  const bool drop_floored = !(j_drop > cfg.eps_floor);
  out.floor_active = keep_floored || drop_floored;

  const double theta_sq = fp.theta().squaredNorm();
  out.r = std::log(drop_floored ? cfg.eps_floor : j_drop) -
          std::log(keep_floored ? cfg.eps_floor : j_keep) + cfg.beta * theta_sq;
  if (!std::isfinite(out.r)) throw NonFinite("objective is not finite");

  if (with_gradient) {
    const Eigen::VectorXd& g_keep = preserve_a ? grad_a : grad_b;
    const Eigen::VectorXd& g_drop = preserve_a ? grad_b : grad_a;
    out.gradient = 2.0 * cfg.beta * fp.theta();
    // A floored term is constant in theta.
    if (!drop_floored) out.gradient += g_drop / j_drop;
    if (!keep_floored) out.gradient -= g_keep / j_keep;
    if (!out.gradient.allFinite()) throw NonFinite("objective gradient is not finite");
  }
  return out;
}

double ratio_objective(const FilterParams& fp, const Dataset& ds, const ObjectiveConfig& cfg) {
  return evaluate_objective(fp, ds, cfg, false).r;
}

Eigen::VectorXd ratio_gradient(const FilterParams& fp, const Dataset& ds,
                               const ObjectiveConfig& cfg) {
  return evaluate_objective(fp, ds, cfg, true).gradient;
}

}  // namespace ddf
