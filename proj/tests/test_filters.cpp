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

#include <doctest.h>

#include "ddf/error.hpp"
#include "ddf/filters.hpp"
#include "test_support.hpp"

using namespace ddf;
using namespace ddf::testing;

namespace {

// Direct transcription of the reference Matlab routine, 1-based and
// column-major, run on the same vectors without any layout conversion.
Eigen::VectorXd matlab_conv_jacobian(const Eigen::VectorXd& x, Eigen::Index m, Eigen::Index i1) {
  const Eigen::Index n = image_side(x.size());
  const Eigen::Index r = (i1 - 1) % m + 1;
  const Eigen::Index c = (i1 - 1) / m + 1;
  const Eigen::Index big = m + n - 1;
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(big, big);
  for (Eigen::Index b = 1; b <= n; ++b)
    for (Eigen::Index a = 1; a <= n; ++a) im(r + a - 2, c + b - 2) = x[(a - 1) + (b - 1) * n];
  const Eigen::Index upper = (big - n + 1) / 2;  // ceil((big - n) / 2)
  const Eigen::Index left = (big - n + 1) / 2;
  Eigen::VectorXd out(n * n);
  for (Eigen::Index b = 1; b <= n; ++b)
    for (Eigen::Index a = 1; a <= n; ++a) out[(a - 1) + (b - 1) * n] = im(a + upper - 1, b + left - 1);
  return out;
}

// Zero-padded full 2-D convolution cropped with the same ceil split.
Eigen::VectorXd naive_conv(const Eigen::VectorXd& kernel, Eigen::Index k, const Eigen::VectorXd& x) {
  const Eigen::Index n = image_side(x.size());
  const Eigen::Index big = n + k - 1;
  Eigen::MatrixXd full = Eigen::MatrixXd::Zero(big, big);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b)
      for (Eigen::Index u = 0; u < n; ++u)
        for (Eigen::Index v = 0; v < n; ++v) full(a + u, b + v) += kernel[a * k + b] * x[u * n + v];
  const Eigen::Index off = (k - 1 + 1) / 2;
  Eigen::VectorXd out(n * n);
  for (Eigen::Index u = 0; u < n; ++u)
    for (Eigen::Index v = 0; v < n; ++v) out[u * n + v] = full(u + off, v + off);
  return out;
}

FilterParams random_params(FilterKind kind, Rng& rng, Eigen::Index& d) {
  switch (kind) {
    case FilterKind::Mask:
      d = 1 + static_cast<Eigen::Index>(rng.below(20));
      return random_filter(kind, d, rng);
    case FilterKind::Linear:
      d = 1 + static_cast<Eigen::Index>(rng.below(10));
      return random_filter(kind, d, rng);
    case FilterKind::Convolution: {
      const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.below(6));
      d = n * n;
      return random_filter(kind, 1 + static_cast<Eigen::Index>(rng.below(6)), rng);
    }
  }
  return random_filter(kind, 1, rng);
}

constexpr FilterKind kKinds[] = {FilterKind::Mask, FilterKind::Linear, FilterKind::Convolution};

}  // namespace

TEST_SUITE("filters") {
  TEST_CASE("identity filters") {
    Rng rng(1);
    const Eigen::VectorXd x = random_vector(9, rng);
    CHECK(apply_filter(FilterParams::mask(Eigen::VectorXd::Ones(9)), x) == x);
    Eigen::VectorXd eye = Eigen::VectorXd::Zero(81);
    for (int i = 0; i < 9; ++i) eye[i * 9 + i] = 1.0;
    CHECK(apply_filter(FilterParams::linear(9, eye), x) == x);
    for (Eigen::Index k : {1, 3, 5}) {
      Eigen::VectorXd delta = Eigen::VectorXd::Zero(k * k);
      delta[(k / 2) * k + k / 2] = 1.0;
      CHECK(apply_filter(FilterParams::convolution(k, delta), x) == x);
    }
    // With an even side the crop offset is k/2, so the delta sits at (k/2, k/2) too.
    Eigen::VectorXd delta4 = Eigen::VectorXd::Zero(16);
    delta4[2 * 4 + 2] = 1.0;
    CHECK(apply_filter(FilterParams::convolution(4, delta4), x) == x);
  }

  TEST_CASE("one-dimensional reference embedded in a 3x3 kernel") {
    // Kernel [a b c] as the middle row and the signal [r s t] as the middle row
    // of a 3x3 image reduce the 2-D convolution to the 1-D case.
    const double a = 2, b = -3, c = 5, r = 7, s = 11, t = 13;
    Eigen::VectorXd kernel = Eigen::VectorXd::Zero(9);
    kernel << 0, 0, 0, a, b, c, 0, 0, 0;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(9);
    x << 0, 0, 0, r, s, t, 0, 0, 0;
    const FilterParams fp = FilterParams::convolution(3, kernel);
    const Eigen::VectorXd out = apply_filter(fp, x);
    CHECK(out[3] == a * s + b * r);
    CHECK(out[4] == a * t + b * s + c * r);
    CHECK(out[5] == b * t + c * s);
    CHECK(out.head(3).isZero(0.0));
    CHECK(out.tail(3).isZero(0.0));
    // Derivatives along the middle kernel row.
    CHECK(filter_jacobian_column(fp, x, 3).segment(3, 3) == Eigen::Vector3d(s, t, 0));
    CHECK(filter_jacobian_column(fp, x, 4).segment(3, 3) == Eigen::Vector3d(r, s, t));
    CHECK(filter_jacobian_column(fp, x, 5).segment(3, 3) == Eigen::Vector3d(0, r, s));
  }

  TEST_CASE("convolution matches a naive zero-padded oracle") {
    Rng rng(2);
    for (int t = 0; t < 60; ++t) {
      const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.below(8));
      const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng.below(7));
      const Eigen::VectorXd kernel = random_vector(k * k, rng);
      const Eigen::VectorXd x = random_vector(n * n, rng);
      const Eigen::VectorXd got = apply_filter(FilterParams::convolution(k, kernel), x);
      CHECK(got.size() == n * n);
      CHECK(relative_error(got, naive_conv(kernel, k, x)) < 1e-14);
    }
  }

  TEST_CASE("convolution Jacobian equals the reference Matlab routine") {
    Rng rng(3);
    for (Eigen::Index k = 1; k <= 6; ++k) {
      for (Eigen::Index n : {3, 4, 7}) {
        const Eigen::VectorXd x = random_vector(n * n, rng);
        const FilterParams fp = FilterParams::convolution(k, random_vector(k * k, rng));
        for (Eigen::Index j = 0; j < k * k; ++j) {
          CHECK(filter_jacobian_column(fp, x, j) == matlab_conv_jacobian(x, k, j + 1));
        }
      }
    }
  }

  TEST_CASE("mask and linear Jacobians") {
    const FilterParams m = FilterParams::mask(Eigen::Vector2d(0.3, 0.4));
    CHECK(filter_jacobian_column(m, Eigen::Vector2d(5, 7), 1) == Eigen::Vector2d(0, 7));
    const FilterParams l = FilterParams::linear(2, Eigen::Vector4d(1, 2, 3, 4));
    // theta index 1 is row 0, column 1 of M.
    CHECK(filter_jacobian_column(l, Eigen::Vector2d(5, 7), 1) == Eigen::Vector2d(7, 0));
    CHECK(filter_jacobian_column(l, Eigen::Vector2d(5, 7), 2) == Eigen::Vector2d(0, 5));
    CHECK(apply_filter(l, Eigen::VectorXd(Eigen::Vector2d(5, 7))) == Eigen::Vector2d(19, 43));
  }

  TEST_CASE("Jacobian columns match finite differences, 100 triples per kind") {
    Rng rng(4);
    for (FilterKind kind : kKinds) {
      double worst = 0.0;
      for (int t = 0; t < 100; ++t) {
        Eigen::Index d = 0;
        const FilterParams fp = random_params(kind, rng, d);
        const Eigen::VectorXd x = random_vector(d, rng);
        const Eigen::Index j = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(fp.param_count())));
        const Eigen::VectorXd fd = fd_column(
            [&](const Eigen::VectorXd& th) { return apply_filter(fp.with_theta(th), x); },
            fp.theta(), j);
        const Eigen::VectorXd got = filter_jacobian_column(fp, x, j);
        if (fd.norm() == 0.0) {
          CHECK(got.norm() < 1e-9);
        } else {
          worst = std::max(worst, relative_error(got, fd));
        }
      }
      CAPTURE(kind_name(kind));
      CHECK(worst < 1e-5);
    }
  }

  TEST_CASE("linearity in x and theta-independence of the Jacobian") {
    Rng rng(5);
    for (FilterKind kind : kKinds) {
      for (int t = 0; t < 20; ++t) {
        Eigen::Index d = 0;
        const FilterParams fp = random_params(kind, rng, d);
        const Eigen::VectorXd x = random_vector(d, rng);
        const Eigen::VectorXd y = random_vector(d, rng);
        const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
        const Eigen::VectorXd lhs = apply_filter(fp, (a * x + b * y).eval());
        const Eigen::VectorXd rhs = a * apply_filter(fp, x) + b * apply_filter(fp, y);
        CHECK((lhs - rhs).norm() <= 1e-12 * std::max(1.0, rhs.norm()));
        const FilterParams other = fp.with_theta(random_vector(fp.param_count(), rng));
        const Eigen::Index j = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(fp.param_count())));
        CHECK(filter_jacobian_column(fp, x, j) == filter_jacobian_column(other, x, j));
        // Linear in theta: F(theta) x = sum_j theta_j dF/dtheta_j.
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(d);
        for (Eigen::Index q = 0; q < fp.param_count(); ++q)
          sum += fp.theta()[q] * filter_jacobian_column(fp, x, q);
        CHECK((sum - apply_filter(fp, x)).norm() <= 1e-12 * std::max(1.0, sum.norm()));
      }
    }
  }

  TEST_CASE("batch application is column-wise and keeps labels") {
    Rng rng(6);
    for (FilterKind kind : kKinds) {
      Eigen::Index d = 0;
      const FilterParams fp = random_params(kind, rng, d);
      const Eigen::MatrixXd x = random_matrix(d, 7, rng);
      const Dataset ds(x, random_labels(7, rng), random_labels(7, rng));
      const FilteredDataset fd = apply_filter_batch(fp, ds);
      for (Eigen::Index i = 0; i < 7; ++i) {
        CHECK((fd.data.samples().col(i) - apply_filter(fp, Eigen::VectorXd(x.col(i)))).norm() < 1e-13);
      }
      CHECK(fd.data.labels_a() == ds.labels_a());
      CHECK(fd.data.labels_b() == ds.labels_b());
      Eigen::MatrixXd cols;
      filter_jacobian_columns(fp, x, 0, cols);
      for (Eigen::Index i = 0; i < 7; ++i)
        CHECK((cols.col(i) - filter_jacobian_column(fp, Eigen::VectorXd(x.col(i)), 0)).norm() < 1e-15);
    }
    const Eigen::VectorXd theta = random_vector(4, rng);
    const Eigen::MatrixXd x = random_matrix(4, 5, rng);
    const Eigen::MatrixXd out = apply_filter(FilterParams::mask(theta), x);
    CHECK((out - theta.asDiagonal() * x).norm() == 0.0);
  }

  TEST_CASE("errors and initialization") {
    Rng rng(7);
    CHECK_THROWS_AS(FilterParams::mask(Eigen::VectorXd()), InvalidArgument);
    CHECK_THROWS_AS(FilterParams::linear(3, Eigen::VectorXd::Ones(8)), DimensionMismatch);
    CHECK_THROWS_AS(FilterParams::convolution(3, Eigen::VectorXd::Ones(8)), DimensionMismatch);
    CHECK_THROWS_AS(apply_filter(FilterParams::mask(Eigen::VectorXd::Ones(3)), Eigen::VectorXd(Eigen::VectorXd::Ones(4))),
                    DimensionMismatch);
    CHECK_THROWS_AS(apply_filter(FilterParams::convolution(3, Eigen::VectorXd::Ones(9)), Eigen::VectorXd(Eigen::VectorXd::Ones(10))),
                    DimensionMismatch);
    CHECK_THROWS_AS(filter_jacobian_column(FilterParams::mask(Eigen::VectorXd::Ones(3)), Eigen::VectorXd::Ones(3), 3),
                    IndexOutOfRange);
    CHECK_THROWS_AS(image_side(15), DimensionMismatch);
    CHECK(image_side(256) == 16);

    const FilterParams conv = init_filter("conv:5", 256, rng);
    CHECK(conv.kind() == FilterKind::Convolution);
    CHECK(conv.param_count() == 25);
    CHECK(conv.theta().minCoeff() >= 0.0);
    CHECK(conv.theta().maxCoeff() < 1.0);
    const FilterParams lin = init_filter("linear", 4, rng);
    CHECK(lin.param_count() == 16);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        const double off = lin.theta()[r * 4 + c] - (r == c ? 1.0 : 0.0);
        CHECK(off >= -0.1);
        CHECK(off < 0.1);
      }
    CHECK(init_filter("mask", 7, rng).param_count() == 7);
    CHECK_THROWS_AS(init_filter("blur", 7, rng), InvalidArgument);
    Rng r1(9), r2(9);
    CHECK(init_filter("conv:3", 16, r1).theta() == init_filter("conv:3", 16, r2).theta());
  }
}
