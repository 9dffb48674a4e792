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

// Parametric linear filters f = F(theta, x).
//
// All three families are linear in x and in theta:
//   Mask         f = Diag(theta) x                      theta has d entries
//   Linear       f = M(theta) x, M row-major d x d      theta has d*d entries
//   Convolution  f = Clip(theta * x) on an n x n image  theta has k*k entries
//
// Images and kernels are row-major flattenings. The clipped convolution is the
// full zero-padded convolution of size (n+k-1)^2 cropped back to n x n with a
// leading offset of ceil((k-1)/2) = k/2 in each axis:
//   f[u][v] = sum_{r,c} theta[r][c] * x[u + k/2 - r][v + k/2 - c]
// with x taken as zero outside the image.

#pragma once

#include <Eigen/Core>
#include <string>

#include "ddf/fisher.hpp"
#include "ddf/rng.hpp"

namespace ddf {

enum class FilterKind { Convolution, Mask, Linear };

class FilterParams {
 public:
  static FilterParams convolution(Eigen::Index kernel_side, Eigen::VectorXd theta);
  static FilterParams mask(Eigen::VectorXd theta);
  static FilterParams linear(Eigen::Index dim, Eigen::VectorXd theta);

  FilterKind kind() const { return kind_; }
  // Kernel side k for convolutions, data dimension d otherwise.
  Eigen::Index shape() const { return shape_; }
  const Eigen::VectorXd& theta() const { return theta_; }
  Eigen::Index param_count() const { return theta_.size(); }

  // Same kind and shape with new parameters.
  FilterParams with_theta(Eigen::VectorXd theta) const;

  // Throws DimensionMismatch when inputs of dimension d cannot be filtered.
  void check_input(Eigen::Index d) const;

 private:
  FilterParams(FilterKind kind, Eigen::Index shape, Eigen::VectorXd theta);

  FilterKind kind_;
  Eigen::Index shape_;
  Eigen::VectorXd theta_;
};

struct FilteredDataset {
  Dataset data;
  FilterParams filter;
};

// Side n of a square image with d = n * n pixels; throws if d is not square.
Eigen::Index image_side(Eigen::Index d);

Eigen::VectorXd apply_filter(const FilterParams& fp, const Eigen::VectorXd& x);

// Column-wise application to a d x N matrix.
Eigen::MatrixXd apply_filter(const FilterParams& fp, const Eigen::MatrixXd& x);

FilteredDataset apply_filter_batch(const FilterParams& fp, const Dataset& ds);

// d f / d theta_j. Independent of theta for every family.
Eigen::VectorXd filter_jacobian_column(const FilterParams& fp, const Eigen::VectorXd& x,
                                       Eigen::Index j);

// Jacobian columns for every sample of x at once: column i = d f(x_i) / d theta_j.
void filter_jacobian_columns(const FilterParams& fp, const Eigen::MatrixXd& x, Eigen::Index j,
                             Eigen::MatrixXd& out);

// Initial parameters: U[0,1) per entry for masks and kernels, identity plus
// U[-0.1,0.1) noise for general linear maps.
FilterParams init_filter(FilterKind kind, Eigen::Index shape, Rng& rng);

// "conv:5", "mask", "linear". The data dimension fills in shape for mask and
// linear filters.
FilterParams init_filter(const std::string& spec, Eigen::Index data_dim, Rng& rng);

const char* kind_name(FilterKind kind);

}  // namespace ddf
