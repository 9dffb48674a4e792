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

// Synthetic two-task datasets. Every generator is a pure function of its spec
// and draws from a single seeded stream.

#pragma once

#include <cstdint>
#include <vector>

#include "ddf/fisher.hpp"

namespace ddf {

// Four isotropic Gaussian clusters centered at (+-1, +-1). Task A is the sign
// of the first center coordinate, task B the sign of the second.
inline constexpr double kClusterCenter = 1.0;
inline constexpr double kClusterSigma = 0.25;

Dataset gen_two_task_points(int n_per_cell, std::uint64_t seed, double sigma = kClusterSigma);

// Images with one full-height vertical line and one full-width horizontal
// line. Task A: 0 when the vertical line lies in the left half. Task B: 0
// when the horizontal line lies in the top half. Pixels are row-major.
struct LineImageSpec {
  int n_images = 1000;
  int side = 16;
  double noise_high = 0.5;  // every pixel gets U[0, noise_high)
  double line_intensity = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct LineImages {
  Dataset dataset;
  std::vector<int> columns;  // vertical line position per image
  std::vector<int> rows;     // horizontal line position per image
};

LineImages gen_line_images(const LineImageSpec& spec);

// Line images whose two labels have a prescribed Pearson correlation.
//
// The label pairs are stratified: exactly round(n (1 + rho) / 2) samples have
// agreeing labels, split evenly between (0,0) and (1,1), and the rest are
// split evenly between (0,1) and (1,0). The pairs are then shuffled and each
// line is drawn uniformly from the half its label dictates.
struct CorrelationSpec {
  int n_images = 1000;
  int side = 16;
  double target_corr = 0.0;
  double noise_high = 0.5;
  double line_intensity_a = 1.0;  // vertical line
  double line_intensity_b = 1.0;  // horizontal line
  std::uint64_t seed = 0;

  void validate() const;
};

LineImages gen_correlated_lines(const CorrelationSpec& spec);

// Pearson correlation of two binary label vectors (0 when either is constant).
double label_correlation(const Labels& a, const Labels& b);

}  // namespace ddf
