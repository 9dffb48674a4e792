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

// Ratio-of-discriminabilities objective
//
//   R(theta) = log( max(J*_suppress, eps) / max(J*_preserve, eps) ) + beta * theta' theta
//
// where each J* is the maximal Fisher discriminability of the filtered data
// F(theta, x_i) for one labeling task. Minimizing R keeps the preserved task
// separable while driving the suppressed task toward indistinguishable.

#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "ddf/filters.hpp"
#include "ddf/fisher.hpp"

namespace ddf {

enum class Optimizer { GradientDescent, ConjugateGradient };

struct ObjectiveConfig {
  double alpha = kDefaultAlpha;
  double beta = 0.5;
  double eps_floor = 1e-12;
  Task preserve = Task::A;  // the suppressed task is the other one

  Optimizer optimizer = Optimizer::GradientDescent;
  int max_iters = 50;      // accepted descent steps
  int max_evals = 100000;  // objective + gradient evaluations, trials included
  double initial_step = 1.0;  // first trial moves theta by this much in norm
  double shrink = 0.5;
  double grow = 2.0;          // next trial step relative to the last accepted one
  double armijo = 1e-4;
  int max_backtracks = 40;
  double grad_tol = 1e-8;
  double rel_tol = 1e-10;
  int snapshot_stride = 10;  // keep theta every this many accepted steps; 0 disables
  std::uint64_t seed = 0;

  Task suppress() const { return other(preserve); }
  // Throws InvalidArgument for out-of-range settings.
  void validate() const;
};

struct ObjectiveValue {
  double r = 0.0;
  double j_star_a = 0.0;
  double j_star_b = 0.0;
  Eigen::VectorXd gradient;  // empty unless requested
  bool floor_active = false;  // some J* fell below eps_floor
};

// Maximal discriminability of one task on already-filtered data, with its
// gradient with respect to theta when `gradient` is non-null.
//
// The derivative follows p* through the chain rule: dp* = W_reg^-1 (dm - dW_reg p*),
// then the quotient rule on (p*' B p*) / (p*' W_reg p*).
double task_j_star(const FilterParams& fp, const Eigen::MatrixXd& originals,
                   const Eigen::MatrixXd& filtered, const Labels& labels, double alpha,
                   Eigen::VectorXd* gradient);

ObjectiveValue evaluate_objective(const FilterParams& fp, const Dataset& ds,
                                  const ObjectiveConfig& cfg, bool with_gradient);

double ratio_objective(const FilterParams& fp, const Dataset& ds, const ObjectiveConfig& cfg);

Eigen::VectorXd ratio_gradient(const FilterParams& fp, const Dataset& ds,
                               const ObjectiveConfig& cfg);

}  // namespace ddf
