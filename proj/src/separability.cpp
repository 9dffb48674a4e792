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

#include <cmath>
#include <vector>

#include "ddf/error.hpp"
#include "ddf/evaluation.hpp"

namespace ddf {

namespace {

// Dense tableau simplex with Bland's rule for
//
//   min sum_k t_k
//   s.t. s_k (w'x_k - b) - e_k + t_k = 1,   w, b free, e, t >= 0
//
// with s_k = +1 for class 0 and -1 for class 1. Free variables are split into
// positive and negative parts. The slack-like t_k form the starting basis.
//
// If the classes are separable some (w, b) meets every margin and the optimum
// is 0. Otherwise their convex hulls share a point z = sum l_i x_i = sum m_j y_j;
// weighting the constraints by l and m and adding gives sum l t + sum m t >= 2,
// so the optimum is at least 2. Anything below 1 therefore certifies
// separability.
class HingeFeasibilityLp {
 public:
  HingeFeasibilityLp(const Eigen::MatrixXd& x0, const Eigen::MatrixXd& x1)
      : d_(x0.rows()), m_(x0.cols() + x1.cols()) {
    const Eigen::Index v = 2 * d_ + 2 + 2 * m_;
    rhs_col_ = v;
    tab_.setZero(m_ + 1, v + 1);
    basis_.resize(static_cast<std::size_t>(m_));

    const double scale = std::max(x0.cwiseAbs().maxCoeff(), x1.cwiseAbs().maxCoeff());
    const double inv = scale > 0.0 ? 1.0 / scale : 1.0;
    for (Eigen::Index k = 0; k < m_; ++k) {
      const bool first = k < x0.cols();
      const double s = first ? 1.0 : -1.0;
      const Eigen::VectorXd x = (first ? x0.col(k) : x1.col(k - x0.cols())) * inv;
      tab_.row(k).segment(0, d_) = s * x.transpose();
      tab_.row(k).segment(d_, d_) = -s * x.transpose();
      tab_(k, 2 * d_) = -s;
      tab_(k, 2 * d_ + 1) = s;
      tab_(k, e_col(k)) = -1.0;
      tab_(k, t_col(k)) = 1.0;
      tab_(k, rhs_col_) = 1.0;
      basis_[static_cast<std::size_t>(k)] = t_col(k);
    }
    // Reduced costs: c_j - sum_k tab(k, j), with c = 1 on the t columns.
    for (Eigen::Index j = 0; j < v; ++j) {
      const double c = j >= t_col(0) ? 1.0 : 0.0;
      tab_(m_, j) = c - tab_.col(j).head(m_).sum();
    }
  }

  bool feasible() {
    const Eigen::Index v = rhs_col_;
    const Eigen::Index max_pivots = 50 * (m_ + v) + 1000;
    for (Eigen::Index it = 0; it < max_pivots; ++it) {
      if (objective() < 1.0) return true;
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < v; ++j) {
        if (tab_(m_, j) < -kCostTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return objective() < 1.0;

      Eigen::Index leave = -1;
      double best = 0.0;
      for (Eigen::Index k = 0; k < m_; ++k) {
        const double a = tab_(k, enter);
        if (a <= kPivotTol) continue;
        const double ratio = tab_(k, rhs_col_) / a;
        if (leave < 0 || ratio < best - kRatioTol ||
            (ratio <= best + kRatioTol &&
             basis_[static_cast<std::size_t>(k)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = k;
          best = ratio;
        }
      }
      // min sum t is bounded below by zero, so an unbounded ray means the
      // entering column only had round-off entries.
      if (leave < 0) {
        tab_(m_, enter) = 0.0;
        continue;
      }
      pivot(leave, enter);
    }
    throw NumericalError("separability LP did not terminate");
  }

 private:
  static constexpr double kCostTol = 1e-10;
  static constexpr double kPivotTol = 1e-12;
  static constexpr double kRatioTol = 1e-13;

  Eigen::Index e_col(Eigen::Index k) const { return 2 * d_ + 2 + k; }
  Eigen::Index t_col(Eigen::Index k) const { return 2 * d_ + 2 + m_ + k; }

  double objective() const {
    double sum = 0.0;
    for (Eigen::Index k = 0; k < m_; ++k) {
      if (basis_[static_cast<std::size_t>(k)] >= t_col(0)) sum += tab_(k, rhs_col_);
    }
    return sum;
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    tab_.row(row) /= tab_(row, col);
    for (Eigen::Index k = 0; k <= m_; ++k) {
      if (k == row) continue;
      const double f = tab_(k, col);
      if (f != 0.0) tab_.row(k) -= f * tab_.row(row);
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  Eigen::Index d_;
  Eigen::Index m_;
  Eigen::Index rhs_col_ = 0;
  Eigen::MatrixXd tab_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

bool separable(const Eigen::MatrixXd& x0, const Eigen::MatrixXd& x1) {
  if (x0.cols() == 0 || x1.cols() == 0) throw EmptyClass("separability needs two nonempty classes");
  if (x0.rows() != x1.rows()) throw DimensionMismatch("classes differ in dimension");
  return HingeFeasibilityLp(x0, x1).feasible();
}

}  // namespace ddf
