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

#include "ddf/synthdata.hpp"

#include <cmath>
#include <utility>

#include "ddf/error.hpp"
#include "ddf/rng.hpp"

namespace ddf {

namespace {

void check_side(int side) {
  if (side < 4 || side % 2 != 0) throw InvalidArgument("image side must be even and >= 4");
}

void draw_image(Eigen::Ref<Eigen::VectorXd> img, int side, int column, int row,
                double intensity_a, double intensity_b, double noise_high, Rng& rng) {
  img.setZero();
  for (int r = 0; r < side; ++r) img[r * side + column] += intensity_a;
  for (int c = 0; c < side; ++c) img[row * side + c] += intensity_b;
  if (noise_high > 0.0) {
    for (Eigen::Index i = 0; i < img.size(); ++i) img[i] += rng.uniform(0.0, noise_high);
  }
}

}  // namespace

Dataset gen_two_task_points(int n_per_cell, std::uint64_t seed, double sigma) {
  if (n_per_cell < 1) throw InvalidArgument("n_per_cell must be positive");
  if (!(sigma >= 0.0)) throw InvalidArgument("sigma must be non-negative");
  Rng rng(seed);
  const Eigen::Index n = 4 * static_cast<Eigen::Index>(n_per_cell);
  Eigen::MatrixXd x(2, n);
  Labels a(static_cast<std::size_t>(n));
  Labels b(static_cast<std::size_t>(n));
  Eigen::Index i = 0;
  for (int k = 0; k < n_per_cell; ++k) {
    for (int cell = 0; cell < 4; ++cell, ++i) {
      const int ya = cell & 1;
      const int yb = (cell >> 1) & 1;
      x(0, i) = (ya ? kClusterCenter : -kClusterCenter) + sigma * rng.normal();
      x(1, i) = (yb ? kClusterCenter : -kClusterCenter) + sigma * rng.normal();
      a[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(ya);
      b[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(yb);
    }
  }
  return Dataset(std::move(x), std::move(a), std::move(b));
}

void LineImageSpec::validate() const {
  if (n_images < 2) throw InvalidArgument("need at least 2 images");
  check_side(side);
  if (!(noise_high >= 0.0)) throw InvalidArgument("noise_high must be non-negative");
}

LineImages gen_line_images(const LineImageSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const int side = spec.side;
  const auto n = static_cast<std::size_t>(spec.n_images);
  Eigen::MatrixXd x(side * side, spec.n_images);
  Labels a(n);
  Labels b(n);
  std::vector<int> columns(n);
  std::vector<int> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    columns[i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(side)));
    rows[i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(side)));
    a[i] = columns[i] >= side / 2 ? 1 : 0;
    b[i] = rows[i] >= side / 2 ? 1 : 0;
    draw_image(x.col(static_cast<Eigen::Index>(i)), side, columns[i], rows[i],
               spec.line_intensity, spec.line_intensity, spec.noise_high, rng);
  }
  return LineImages{Dataset(std::move(x), std::move(a), std::move(b)), std::move(columns),
                    std::move(rows)};
}

void CorrelationSpec::validate() const {
  if (n_images < 2) throw InvalidArgument("need at least 2 images");
  check_side(side);
  if (!(std::abs(target_corr) <= 1.0)) {
    throw InvalidCorrelation("target correlation must lie in [-1, 1]");
  }
  if (!(noise_high >= 0.0)) throw InvalidArgument("noise_high must be non-negative");
}

LineImages gen_correlated_lines(const CorrelationSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const int n = spec.n_images;
  const int n_agree = static_cast<int>(std::lround(n * (1.0 + spec.target_corr) / 2.0));
  const int n_disagree = n - n_agree;

  std::vector<std::pair<std::uint8_t, std::uint8_t>> pairs;
  pairs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n_agree; ++i) {
    const auto y = static_cast<std::uint8_t>(i < n_agree / 2 ? 0 : 1);
    pairs.emplace_back(y, y);
  }
  for (int i = 0; i < n_disagree; ++i) {
    const auto y = static_cast<std::uint8_t>(i < n_disagree / 2 ? 0 : 1);
    pairs.emplace_back(y, static_cast<std::uint8_t>(1 - y));
  }
  rng.shuffle(pairs);

  const int side = spec.side;
  const int half = side / 2;
  const auto nn = static_cast<std::size_t>(n);
  Eigen::MatrixXd x(side * side, n);
  Labels a(nn);
  Labels b(nn);
  std::vector<int> columns(nn);
  std::vector<int> rows(nn);
  for (std::size_t i = 0; i < nn; ++i) {
    a[i] = pairs[i].first;
    b[i] = pairs[i].second;
    columns[i] = a[i] * half + static_cast<int>(rng.below(static_cast<std::uint64_t>(half)));
    rows[i] = b[i] * half + static_cast<int>(rng.below(static_cast<std::uint64_t>(half)));
    draw_image(x.col(static_cast<Eigen::Index>(i)), side, columns[i], rows[i],
               spec.line_intensity_a, spec.line_intensity_b, spec.noise_high, rng);
  }
  return LineImages{Dataset(std::move(x), std::move(a), std::move(b)), std::move(columns),
                    std::move(rows)};
}

double label_correlation(const Labels& a, const Labels& b) {
  if (a.size() != b.size()) throw DimensionMismatch("label vectors differ in length");
  const double n = static_cast<double>(a.size());
  double sa = 0, sb = 0, sab = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
    sab += a[i] * b[i];
  }
  const double ma = sa / n;
  const double mb = sb / n;
  const double cov = sab / n - ma * mb;
  const double var = ma * (1 - ma) * mb * (1 - mb);
  return var > 0.0 ? cov / std::sqrt(var) : 0.0;
}

}  // namespace ddf
