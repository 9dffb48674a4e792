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

// Ridge reconstruction of original samples from filtered ones.
//
// P (d x (d+1)) minimizes ||X - P [F; 1]||_F^2 + gamma * ||P I~||_F^2 where I~
// is the identity with its last diagonal entry zeroed, so the bias column is
// not shrunk. With A = [F; 1] the minimizer solves
//   (A A' + gamma I~) P' = A X'.

#pragma once

#include <Eigen/Core>

namespace ddf {

struct ReconstructionModel {
  Eigen::MatrixXd map_p;  // d x (d+1); last column is the bias
  double gamma = 0.0;

  Eigen::Index dim() const { return map_p.rows(); }
};

struct ReconstructionOptions {
  // gamma == 0 is rejected unless this is set.
  bool allow_zero_gamma = false;
  // With gamma == 0 and a singular normal matrix, use the minimum-norm
  // least-squares solution instead of throwing SingularSystem.
  bool least_squares_fallback = false;
};

ReconstructionModel fit_reconstruction(const Eigen::MatrixXd& originals,
                                       const Eigen::MatrixXd& filtered, double gamma,
                                       const ReconstructionOptions& options = {});

// g = P [f; 1]
Eigen::VectorXd reconstruct(const ReconstructionModel& model, const Eigen::VectorXd& f);
Eigen::MatrixXd reconstruct(const ReconstructionModel& model, const Eigen::MatrixXd& filtered);

// ||X - P [F; 1]||_F^2 + gamma ||P I~||_F^2 for arbitrary P.
double reconstruction_objective(const Eigen::MatrixXd& map_p, const Eigen::MatrixXd& originals,
                                const Eigen::MatrixXd& filtered, double gamma);

// [F; 1]
Eigen::MatrixXd augment_with_ones(const Eigen::MatrixXd& filtered);

}  // namespace ddf
