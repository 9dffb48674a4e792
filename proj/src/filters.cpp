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

#include "ddf/filters.hpp"

#include <cmath>
#include <string>

#include "ddf/error.hpp"

namespace ddf {

namespace {

// Clipped convolution of an n x n image with a k x k kernel. Both are
// row-major; out must already have n * n entries.
template <typename In, typename Out>
void convolve_clipped(const Eigen::VectorXd& kernel, Eigen::Index k, const In& x,
                      Eigen::Index n, Out&& out) {
  const Eigen::Index off = k / 2;
  for (Eigen::Index u = 0; u < n; ++u) {
    for (Eigen::Index v = 0; v < n; ++v) {
      double acc = 0.0;
      for (Eigen::Index r = 0; r < k; ++r) {
        const Eigen::Index xu = u + off - r;
        if (xu < 0 || xu >= n) continue;
        for (Eigen::Index c = 0; c < k; ++c) {
          const Eigen::Index xv = v + off - c;
          if (xv < 0 || xv >= n) continue;
          acc += kernel[r * k + c] * x[xu * n + xv];
        }
      }
      out[u * n + v] = acc;
    }
  }
}

// d f / d theta_(r,c): the image shifted by (r - k/2, c - k/2), zero filled.
template <typename In, typename Out>
void shifted_image(const In& x, Eigen::Index n, Eigen::Index k, Eigen::Index j, Out&& out) {
  const Eigen::Index off = k / 2;
  const Eigen::Index r = j / k;
  const Eigen::Index c = j % k;
  for (Eigen::Index u = 0; u < n; ++u) {
    const Eigen::Index xu = u + off - r;
    for (Eigen::Index v = 0; v < n; ++v) {
      const Eigen::Index xv = v + off - c;
      out[u * n + v] = (xu >= 0 && xu < n && xv >= 0 && xv < n) ? x[xu * n + xv] : 0.0;
    }
  }
}

}  // namespace

const char* kind_name(FilterKind kind) {
  switch (kind) {
    case FilterKind::Convolution:
      return "conv";
    case FilterKind::Mask:
      return "mask";
    case FilterKind::Linear:
      return "linear";
  }
  return "?";
}

FilterParams::FilterParams(FilterKind kind, Eigen::Index shape, Eigen::VectorXd theta)
    : kind_(kind), shape_(shape), theta_(std::move(theta)) {
  if (shape_ < 1) throw InvalidArgument("filter shape must be positive");
  Eigen::Index expected = shape_;
  if (kind_ != FilterKind::Mask) expected = shape_ * shape_;
  if (theta_.size() != expected) {
    throw DimensionMismatch(std::string(kind_name(kind_)) + " filter expects " +
                            std::to_string(expected) + " parameters, got " +
                            std::to_string(theta_.size()));
  }
}

FilterParams FilterParams::convolution(Eigen::Index kernel_side, Eigen::VectorXd theta) {
  return FilterParams(FilterKind::Convolution, kernel_side, std::move(theta));
}

FilterParams FilterParams::mask(Eigen::VectorXd theta) {
  const Eigen::Index d = theta.size();
  return FilterParams(FilterKind::Mask, d, std::move(theta));
}

FilterParams FilterParams::linear(Eigen::Index dim, Eigen::VectorXd theta) {
  return FilterParams(FilterKind::Linear, dim, std::move(theta));
}

FilterParams FilterParams::with_theta(Eigen::VectorXd theta) const {
  return FilterParams(kind_, shape_, std::move(theta));
}

Eigen::Index image_side(Eigen::Index d) {
  auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(d))));
  if (n * n != d) {
    throw DimensionMismatch("convolution needs square images, d = " + std::to_string(d));
  }
  return n;
}

void FilterParams::check_input(Eigen::Index d) const {
  if (kind_ == FilterKind::Convolution) {
    image_side(d);
  } else if (d != shape_) {
    throw DimensionMismatch(std::string(kind_name(kind_)) + " filter of dimension " +
                            std::to_string(shape_) + " applied to input of dimension " +
                            std::to_string(d));
  }
}

Eigen::VectorXd apply_filter(const FilterParams& fp, const Eigen::VectorXd& x) {
  fp.check_input(x.size());
  switch (fp.kind()) {
    case FilterKind::Mask:
      return fp.theta().cwiseProduct(x);
    case FilterKind::Linear: {
      const Eigen::Index d = fp.shape();
      const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
          m(fp.theta().data(), d, d);
      return m * x;
    }
    case FilterKind::Convolution: {
      const Eigen::Index n = image_side(x.size());
      Eigen::VectorXd out(x.size());
      convolve_clipped(fp.theta(), fp.shape(), x, n, out);
      return out;
    }
  }
  return {};
}

Eigen::MatrixXd apply_filter(const FilterParams& fp, const Eigen::MatrixXd& x) {
  fp.check_input(x.rows());
  if (fp.kind() == FilterKind::Linear) {
    const Eigen::Index d = fp.shape();
    const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        m(fp.theta().data(), d, d);
    return m * x;
  }
  if (fp.kind() == FilterKind::Mask) return fp.theta().asDiagonal() * x;
  Eigen::MatrixXd out(x.rows(), x.cols());
  const Eigen::Index n = image_side(x.rows());
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    convolve_clipped(fp.theta(), fp.shape(), x.col(i), n, out.col(i));
  }
  return out;
}

FilteredDataset apply_filter_batch(const FilterParams& fp, const Dataset& ds) {
  return FilteredDataset{ds.with_samples(apply_filter(fp, ds.samples())), fp};
}

Eigen::VectorXd filter_jacobian_column(const FilterParams& fp, const Eigen::VectorXd& x,
                                       Eigen::Index j) {
  Eigen::MatrixXd out;
  filter_jacobian_columns(fp, x, j, out);
  return out.col(0);
}

void filter_jacobian_columns(const FilterParams& fp, const Eigen::MatrixXd& x, Eigen::Index j,
                             Eigen::MatrixXd& out) {
  fp.check_input(x.rows());
  if (j < 0 || j >= fp.param_count()) {
    throw IndexOutOfRange("parameter index " + std::to_string(j) + " out of range");
  }
  out.setZero(x.rows(), x.cols());
  switch (fp.kind()) {
    case FilterKind::Mask:
      out.row(j) = x.row(j);
      break;
    case FilterKind::Linear: {
      // theta_j is M(row, col) with j = row * d + col.
      const Eigen::Index d = fp.shape();
      out.row(j / d) = x.row(j % d);
      break;
    }
    case FilterKind::Convolution: {
      const Eigen::Index n = image_side(x.rows());
      for (Eigen::Index i = 0; i < x.cols(); ++i) {
        shifted_image(x.col(i), n, fp.shape(), j, out.col(i));
      }
      break;
    }
  }
}

FilterParams init_filter(FilterKind kind, Eigen::Index shape, Rng& rng) {
  switch (kind) {
    case FilterKind::Mask: {
      Eigen::VectorXd theta(shape);
      for (Eigen::Index i = 0; i < shape; ++i) theta[i] = rng.uniform();
      return FilterParams::mask(std::move(theta));
    }
    case FilterKind::Convolution: {
      Eigen::VectorXd theta(shape * shape);
      for (Eigen::Index i = 0; i < theta.size(); ++i) theta[i] = rng.uniform();
      return FilterParams::convolution(shape, std::move(theta));
    }
    case FilterKind::Linear: {
      Eigen::VectorXd theta(shape * shape);
      for (Eigen::Index i = 0; i < theta.size(); ++i) theta[i] = rng.uniform(-0.1, 0.1);
      for (Eigen::Index i = 0; i < shape; ++i) theta[i * shape + i] += 1.0;
      return FilterParams::linear(shape, std::move(theta));
    }
  }
  throw InvalidArgument("unknown filter kind");
}

FilterParams init_filter(const std::string& spec, Eigen::Index data_dim, Rng& rng) {
  if (spec == "mask") return init_filter(FilterKind::Mask, data_dim, rng);
  if (spec == "linear") return init_filter(FilterKind::Linear, data_dim, rng);
  if (spec.rfind("conv:", 0) == 0) {
    std::size_t used = 0;
    long k = 0;
    try {
      k = std::stol(spec.substr(5), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != spec.size() - 5 || k < 1) {
      throw InvalidArgument("bad convolution spec '" + spec + "'");
    }
    image_side(data_dim);
    return init_filter(FilterKind::Convolution, k, rng);
  }
  throw InvalidArgument("unknown filter spec '" + spec + "' (expected conv:K, mask or linear)");
}

}  // namespace ddf
