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

#include "ddf/fisher.hpp"

#include <string>

#include "ddf/error.hpp"

namespace ddf {

namespace {

void check_labels(const Labels& labels, Eigen::Index n, const char* which) {
  if (static_cast<Eigen::Index>(labels.size()) != n) {
    throw DimensionMismatch(std::string("labels_") + which + " has " +
                            std::to_string(labels.size()) + " entries, expected " +
                            std::to_string(n));
  }
  for (auto y : labels) {
    if (y > 1) throw InvalidArgument(std::string("labels_") + which + " must be 0 or 1");
  }
}

Eigen::VectorXd column_mean(const Eigen::MatrixXd& x) {
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(x.rows());
  for (Eigen::Index i = 0; i < x.cols(); ++i) mean += x.col(i);
  return mean / static_cast<double>(x.cols());
}

}  // namespace

Dataset::Dataset(Eigen::MatrixXd samples, Labels labels_a, Labels labels_b)
    : samples_(std::move(samples)),
      labels_a_(std::move(labels_a)),
      labels_b_(std::move(labels_b)) {
  if (samples_.cols() < 2) throw InvalidArgument("dataset needs at least 2 samples");
  if (samples_.rows() < 1) throw InvalidArgument("dataset dimension must be positive");
  check_labels(labels_a_, samples_.cols(), "a");
  check_labels(labels_b_, samples_.cols(), "b");
  global_mean_ = column_mean(samples_);
}

Dataset Dataset::with_samples(Eigen::MatrixXd samples) const {
  if (samples.cols() != size()) {
    throw DimensionMismatch("replacement samples must keep the sample count");
  }
  return Dataset(std::move(samples), labels_a_, labels_b_);
}

Dataset Dataset::slice(Eigen::Index begin, Eigen::Index end) const {
  if (begin < 0 || end > size() || end - begin < 2) {
    throw IndexOutOfRange("invalid dataset slice");
  }
  Labels a(labels_a_.begin() + begin, labels_a_.begin() + end);
  Labels b(labels_b_.begin() + begin, labels_b_.begin() + end);
  return Dataset(samples_.middleCols(begin, end - begin), std::move(a), std::move(b));
}

ClassSplit split_by_labels(const Eigen::MatrixXd& samples, const Labels& labels) {
  if (static_cast<Eigen::Index>(labels.size()) != samples.cols()) {
    throw DimensionMismatch("label count does not match sample count");
  }
  Eigen::Index n1 = 0;
  for (auto y : labels) n1 += (y != 0);
  const Eigen::Index n0 = samples.cols() - n1;
  if (n0 == 0 || n1 == 0) throw EmptyClass("task has an empty class");

  ClassSplit split;
  split.x0.resize(samples.rows(), n0);
  split.x1.resize(samples.rows(), n1);
  Eigen::Index i0 = 0;
  Eigen::Index i1 = 0;
  for (Eigen::Index i = 0; i < samples.cols(); ++i) {
    if (labels[static_cast<std::size_t>(i)] != 0) {
      split.x1.col(i1++) = samples.col(i);
    } else {
      split.x0.col(i0++) = samples.col(i);
    }
  }
  split.mean0 = column_mean(split.x0);
  split.mean1 = column_mean(split.x1);
  return split;
}

ClassSplit split_by_task(const Dataset& ds, Task task) {
  return split_by_labels(ds.samples(), ds.labels(task));
}

Eigen::MatrixXd within_scatter(const ClassSplit& split) {
  const Eigen::Index d = split.mean0.size();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(d, d);
  // Centered class blocks through one rank-k update each; the result depends
  // only on the inputs, never on thread scheduling.
  const Eigen::MatrixXd g0 = split.x0.colwise() - split.mean0;
  const Eigen::MatrixXd g1 = split.x1.colwise() - split.mean1;
  w.selfadjointView<Eigen::Lower>().rankUpdate(g1);
  w.selfadjointView<Eigen::Lower>().rankUpdate(g0);
  w.triangularView<Eigen::StrictlyUpper>() = w.transpose();
  return w;
}

FisherStats compute_stats(const ClassSplit& split, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in [0, 1]");
  if (split.mean0.size() != split.mean1.size()) {
    throw DimensionMismatch("class means differ in dimension");
  }
  FisherStats s;
  s.alpha = alpha;
  s.mean_diff = split.mean1 - split.mean0;
  s.between = s.mean_diff * s.mean_diff.transpose();
  s.within = within_scatter(split);
  s.within_reg = (1.0 - alpha) * s.within;
  s.within_reg.diagonal().array() += alpha;
  return s;
}

double fisher_J(const FisherStats& stats, const Eigen::VectorXd& p) {
  if (p.size() != stats.mean_diff.size()) throw DimensionMismatch("direction dimension");
  if (p.isZero(0.0)) throw ZeroDirection("Fisher criterion is undefined for p = 0");
  const double proj = p.dot(stats.mean_diff);
  const double num = proj * proj;
  const double den = p.dot(stats.within_reg * p);
  return num / den;
}

Eigen::LLT<Eigen::MatrixXd> factor_within(const Eigen::MatrixXd& within_reg,
                                          double max_condition) {
  Eigen::LLT<Eigen::MatrixXd> llt(within_reg);
  if (llt.info() != Eigen::Success) {
    throw SingularWithin("within-class scatter is not positive definite");
  }
  const double rcond = llt.rcond();
  if (!(rcond * max_condition >= 1.0)) {
    throw SingularWithin("within-class scatter condition estimate " +
                         std::to_string(1.0 / rcond) + " exceeds limit");
  }
  return llt;
}

Discriminant optimal_discriminant(const FisherStats& stats, double max_condition) {
  Discriminant out;
  if (stats.mean_diff.isZero(0.0)) {
    out.direction = Eigen::VectorXd::Zero(stats.mean_diff.size());
    out.degenerate_means = true;
    return out;
  }
  const auto llt = factor_within(stats.within_reg, max_condition);
  out.direction = llt.solve(stats.mean_diff);
  return out;
}

double fisher_J_star(const FisherStats& stats, double max_condition) {
  const Discriminant disc = optimal_discriminant(stats, max_condition);
  if (disc.degenerate_means) return 0.0;
  return fisher_J(stats, disc.direction);
}

double fisher_J_star(const ClassSplit& split, double alpha) {
  return fisher_J_star(compute_stats(split, alpha));
}

}  // namespace ddf
