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

// Two-class Fisher discriminant statistics.
//
// For a labeled sample matrix the between-class scatter is the outer product
// of the class-mean difference m = mean1 - mean0, and the within-class scatter
// W sums the centered outer products of both classes. W is always used in its
// regularized form W_reg = alpha * I + (1 - alpha) * W. The maximal
// discriminability J* is the Fisher criterion evaluated at p* = W_reg^-1 m,
// which simplifies to m' W_reg^-1 m.

#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <vector>

namespace ddf {

enum class Task { A, B };

inline Task other(Task t) { return t == Task::A ? Task::B : Task::A; }
inline const char* task_name(Task t) { return t == Task::A ? "A" : "B"; }

using Labels = std::vector<std::uint8_t>;

// d x N samples (one column per sample) with binary labels for two tasks.
class Dataset {
 public:
  Dataset(Eigen::MatrixXd samples, Labels labels_a, Labels labels_b);

  const Eigen::MatrixXd& samples() const { return samples_; }
  const Labels& labels(Task t) const { return t == Task::A ? labels_a_ : labels_b_; }
  const Labels& labels_a() const { return labels_a_; }
  const Labels& labels_b() const { return labels_b_; }
  const Eigen::VectorXd& global_mean() const { return global_mean_; }

  Eigen::Index dim() const { return samples_.rows(); }
  Eigen::Index size() const { return samples_.cols(); }

  // Same labels, new sample matrix (must have the same number of columns).
  Dataset with_samples(Eigen::MatrixXd samples) const;

  // Columns [begin, end) in order.
  Dataset slice(Eigen::Index begin, Eigen::Index end) const;

 private:
  Eigen::MatrixXd samples_;
  Labels labels_a_;
  Labels labels_b_;
  Eigen::VectorXd global_mean_;
};

struct ClassSplit {
  Eigen::MatrixXd x0;
  Eigen::MatrixXd x1;
  Eigen::VectorXd mean0;
  Eigen::VectorXd mean1;
};

struct FisherStats {
  Eigen::MatrixXd between;
  Eigen::MatrixXd within;
  Eigen::MatrixXd within_reg;
  Eigen::VectorXd mean_diff;  // mean1 - mean0; between == mean_diff * mean_diff'
  double alpha = 0.1;
};

inline constexpr double kDefaultAlpha = 0.1;
// Reciprocal condition estimates below 1 / kMaxCondition raise SingularWithin.
inline constexpr double kMaxCondition = 1e12;

// Partitions columns by label; order inside a class follows the input order.
// Throws EmptyClass when a class has no samples.
ClassSplit split_by_labels(const Eigen::MatrixXd& samples, const Labels& labels);
ClassSplit split_by_task(const Dataset& ds, Task task);

FisherStats compute_stats(const ClassSplit& split, double alpha);

// Within-class scatter of an arbitrary split, accumulated sample by sample.
Eigen::MatrixXd within_scatter(const ClassSplit& split);

// p' B p / p' W_reg p. Throws ZeroDirection for p == 0.
double fisher_J(const FisherStats& stats, const Eigen::VectorXd& p);

struct Discriminant {
  Eigen::VectorXd direction;
  bool degenerate_means = false;  // class means coincide; direction is 0
};

// Solves W_reg p = mean_diff with a Cholesky factorization.
// Throws SingularWithin when the factorization fails or is ill-conditioned.
Discriminant optimal_discriminant(const FisherStats& stats,
                                  double max_condition = kMaxCondition);

// J at p*; 0 when the class means coincide.
double fisher_J_star(const FisherStats& stats, double max_condition = kMaxCondition);
double fisher_J_star(const ClassSplit& split, double alpha);

// Cholesky factor of W_reg with the condition check applied.
Eigen::LLT<Eigen::MatrixXd> factor_within(const Eigen::MatrixXd& within_reg,
                                          double max_condition = kMaxCondition);

}  // namespace ddf
