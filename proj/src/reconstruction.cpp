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

#include "ddf/reconstruction.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <cmath>

#include "ddf/error.hpp"

namespace ddf {

Eigen::MatrixXd augment_with_ones(const Eigen::MatrixXd& filtered) {
  Eigen::MatrixXd a(filtered.rows() + 1, filtered.cols());
  a.topRows(filtered.rows()) = filtered;
  a.bottomRows(1).setOnes();
  return a;
}

ReconstructionModel fit_reconstruction(const Eigen::MatrixXd& originals,
                                       const Eigen::MatrixXd& filtered, double gamma,
                                       const ReconstructionOptions& options) {
  if (originals.cols() != filtered.cols()) {
    throw DimensionMismatch("originals and filtered differ in sample count");
  }
  if (originals.rows() != filtered.rows()) {
    throw DimensionMismatch("originals and filtered differ in dimension");
  }
  if (originals.cols() < 1) throw InvalidArgument("no samples to fit");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("gamma must be finite and non-negative");
  }
  if (gamma == 0.0 && !options.allow_zero_gamma) {
    throw InvalidArgument("gamma = 0 requires an explicit opt-in");
  }

  const Eigen::Index d = filtered.rows();
  const Eigen::MatrixXd a = augment_with_ones(filtered);
  Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(d + 1, d + 1);
  normal.selfadjointView<Eigen::Lower>().rankUpdate(a);
  normal.triangularView<Eigen::StrictlyUpper>() = normal.transpose();
  normal.diagonal().head(d).array() += gamma;
  const Eigen::MatrixXd rhs = a * originals.transpose();  // (d+1) x d

  ReconstructionModel model;
  model.gamma = gamma;

  Eigen::LLT<Eigen::MatrixXd> llt(normal);
  // gamma > 0 makes the system positive definite; without the ridge the
  // factorization can succeed on a numerically singular matrix.
  const bool factored =
      llt.info() == Eigen::Success && (gamma > 0.0 || llt.rcond() > 1e-14);
  if (factored) {
    model.map_p = llt.solve(rhs).transpose();
  } else if (gamma == 0.0 && options.least_squares_fallback) {
    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a.transpose());
    model.map_p = cod.solve(originals.transpose()).transpose();
  } else {
    throw SingularSystem("reconstruction normal equations are singular");
  }
  if (!model.map_p.allFinite()) throw NonFinite("reconstruction map is not finite");
  return model;
}

Eigen::VectorXd reconstruct(const ReconstructionModel& model, const Eigen::VectorXd& f) {
  if (f.size() != model.dim()) throw DimensionMismatch("reconstruction input dimension");
  return model.map_p.leftCols(model.dim()) * f + model.map_p.col(model.dim());
}

Eigen::MatrixXd reconstruct(const ReconstructionModel& model, const Eigen::MatrixXd& filtered) {
  if (filtered.rows() != model.dim()) throw DimensionMismatch("reconstruction input dimension");
  Eigen::MatrixXd g = model.map_p.leftCols(model.dim()) * filtered;
  g.colwise() += model.map_p.col(model.dim());
  return g;
}

double reconstruction_objective(const Eigen::MatrixXd& map_p, const Eigen::MatrixXd& originals,
                                const Eigen::MatrixXd& filtered, double gamma) {
  const Eigen::Index d = filtered.rows();
  if (map_p.rows() != originals.rows() || map_p.cols() != d + 1) {
    throw DimensionMismatch("map shape does not match data");
  }
  const Eigen::MatrixXd residual = originals - map_p * augment_with_ones(filtered);
  return residual.squaredNorm() + gamma * map_p.leftCols(d).squaredNorm();
}

}  // namespace ddf
