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

// Helpers shared by the unit and acceptance suites. Nothing here calls into
// the code paths it is used to check.

#pragma once

#include <Eigen/Core>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <unistd.h>

#include "ddf/filters.hpp"
#include "ddf/fisher.hpp"
#include "ddf/rng.hpp"

namespace ddf::testing {

inline Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng,
                                     double lo = -1.0, double hi = 1.0) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = rng.uniform(lo, hi);
  return m;
}

inline Eigen::VectorXd random_vector(Eigen::Index n, Rng& rng, double lo = -1.0, double hi = 1.0) {
  return random_matrix(n, 1, rng, lo, hi).col(0);
}

inline Eigen::VectorXd random_unit(Eigen::Index n, Rng& rng) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.normal();
  return v.normalized();
}

// Labels with at least one sample in each class.
inline Labels random_labels(Eigen::Index n, Rng& rng) {
  Labels y(static_cast<std::size_t>(n));
  for (auto& v : y) v = static_cast<std::uint8_t>(rng.below(2));
  y[0] = 0;
  y[1] = 1;
  rng.shuffle(y);
  return y;
}

// Scatter matrices by explicit per-entry summation over samples.
struct BruteScatter {
  Eigen::MatrixXd between;
  Eigen::MatrixXd within;
};

inline BruteScatter brute_scatter(const Eigen::MatrixXd& x0, const Eigen::MatrixXd& x1) {
  const Eigen::Index d = x0.rows();
  std::vector<double> m0(static_cast<std::size_t>(d), 0.0);
  std::vector<double> m1(static_cast<std::size_t>(d), 0.0);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index i = 0; i < x0.cols(); ++i) m0[r] += x0(r, i);
    for (Eigen::Index i = 0; i < x1.cols(); ++i) m1[r] += x1(r, i);
    m0[r] /= static_cast<double>(x0.cols());
    m1[r] /= static_cast<double>(x1.cols());
  }
  BruteScatter s{Eigen::MatrixXd(d, d), Eigen::MatrixXd(d, d)};
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      s.between(r, c) = (m1[r] - m0[r]) * (m1[c] - m0[c]);
      double w = 0.0;
      for (Eigen::Index i = 0; i < x0.cols(); ++i) w += (x0(r, i) - m0[r]) * (x0(c, i) - m0[c]);
      for (Eigen::Index i = 0; i < x1.cols(); ++i) w += (x1(r, i) - m1[r]) * (x1(c, i) - m1[c]);
      s.within(r, c) = w;
    }
  }
  return s;
}

// Central finite-difference gradient of a scalar function of theta.
inline Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                   const Eigen::VectorXd& theta, double rel_h = 1e-6) {
  Eigen::VectorXd g(theta.size());
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    const double h = rel_h * std::max(1.0, std::abs(theta[j]));
    Eigen::VectorXd hi = theta;
    Eigen::VectorXd lo = theta;
    hi[j] += h;
    lo[j] -= h;
    g[j] = (f(hi) - f(lo)) / (2.0 * h);
  }
  return g;
}

// Central finite-difference Jacobian column of a vector function.
inline Eigen::VectorXd fd_column(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                                 const Eigen::VectorXd& theta, Eigen::Index j,
                                 double rel_h = 1e-6) {
  const double h = rel_h * std::max(1.0, std::abs(theta[j]));
  Eigen::VectorXd hi = theta;
  Eigen::VectorXd lo = theta;
  hi[j] += h;
  lo[j] -= h;
  return (f(hi) - f(lo)) / (2.0 * h);
}

inline double relative_error(const Eigen::VectorXd& got, const Eigen::VectorXd& want) {
  const double scale = std::max(want.norm(), 1e-12);
  return (got - want).norm() / scale;
}

// Random invertible matrix: Q1 diag(s) Q2 with singular values spread
// log-uniformly so that the condition number equals `cond`.
inline Eigen::MatrixXd random_invertible(Eigen::Index d, double cond, Rng& rng) {
  const Eigen::MatrixXd a = random_matrix(d, d, rng);
  const Eigen::MatrixXd b = random_matrix(d, d, rng);
  const Eigen::MatrixXd q1 = Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
  const Eigen::MatrixXd q2 = Eigen::HouseholderQR<Eigen::MatrixXd>(b).householderQ();
  Eigen::VectorXd s(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double t = d == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(d - 1);
    s[i] = std::pow(cond, -t);
  }
  return q1 * s.asDiagonal() * q2;
}

// Random filter of each kind for data dimension d (square for convolutions).
inline FilterParams random_filter(FilterKind kind, Eigen::Index shape, Rng& rng) {
  switch (kind) {
    case FilterKind::Mask:
      return FilterParams::mask(random_vector(shape, rng));
    case FilterKind::Linear:
      return FilterParams::linear(shape, random_vector(shape * shape, rng));
    case FilterKind::Convolution:
      return FilterParams::convolution(shape, random_vector(shape * shape, rng));
  }
  return FilterParams::mask(Eigen::VectorXd::Ones(1));
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("ddf_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::string str(const std::string& child) const { return (path_ / child).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace ddf::testing
