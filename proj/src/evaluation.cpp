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

#include "ddf/evaluation.hpp"

#include <algorithm>

#include "ddf/error.hpp"
#include "ddf/rng.hpp"

namespace ddf {

Eigen::VectorXd LdaClassifier::scores(const Eigen::MatrixXd& x) const {
  if (x.rows() != direction.size()) throw DimensionMismatch("classifier input dimension");
  return x.transpose() * direction;
}

LdaClassifier train_lda(const Dataset& ds, Task task, double alpha) {
  const ClassSplit split = split_by_task(ds, task);
  const FisherStats stats = compute_stats(split, alpha);
  const Discriminant disc = optimal_discriminant(stats);
  LdaClassifier clf;
  clf.direction = disc.direction;
  clf.degenerate_means = disc.degenerate_means;
  clf.threshold = disc.direction.dot(split.mean0 + split.mean1) / 2.0;
  return clf;
}

double accuracy(const LdaClassifier& clf, const Eigen::MatrixXd& x, const Labels& labels) {
  if (static_cast<Eigen::Index>(labels.size()) != x.cols()) {
    throw DimensionMismatch("label count does not match sample count");
  }
  if (x.cols() == 0) throw InvalidArgument("no samples");
  const Eigen::VectorXd s = clf.scores(x);
  Eigen::Index correct = 0;
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    const int predicted = s[i] > clf.threshold ? 1 : 0;
    correct += predicted == labels[static_cast<std::size_t>(i)];
  }
  return static_cast<double>(correct) / static_cast<double>(x.cols());
}

std::vector<IndexPair> all_pairs(const Labels& labels) {
  std::vector<Eigen::Index> pos;
  std::vector<Eigen::Index> neg;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (labels[i] ? pos : neg).push_back(static_cast<Eigen::Index>(i));
  }
  std::vector<IndexPair> out;
  out.reserve(pos.size() * neg.size());
  for (auto p : pos)
    for (auto q : neg) out.emplace_back(p, q);
  return out;
}

std::vector<IndexPair> sample_pairs(const Labels& labels, int n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("pair count must be positive");
  std::vector<Eigen::Index> pos;
  std::vector<Eigen::Index> neg;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (labels[i] ? pos : neg).push_back(static_cast<Eigen::Index>(i));
  }
  Rng rng(seed);
  rng.shuffle(pos);
  rng.shuffle(neg);
  const std::size_t k = std::min({static_cast<std::size_t>(n), pos.size(), neg.size()});
  std::vector<IndexPair> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.emplace_back(pos[i], neg[i]);
  return out;
}

double two_afc(const std::vector<std::pair<double, double>>& scored_pairs) {
  if (scored_pairs.empty()) throw EmptyPairs("2AFC needs at least one pair");
  double wins = 0.0;
  for (const auto& [pos, neg] : scored_pairs) {
    if (pos > neg) {
      wins += 1.0;
    } else if (pos == neg) {
      wins += 0.5;
    }
  }
  return wins / static_cast<double>(scored_pairs.size());
}

double two_afc(const LdaClassifier& clf, const Eigen::MatrixXd& x,
               const std::vector<IndexPair>& pairs) {
  const Eigen::VectorXd s = clf.scores(x);
  std::vector<std::pair<double, double>> scored;
  scored.reserve(pairs.size());
  for (const auto& [p, q] : pairs) {
    if (p < 0 || p >= x.cols() || q < 0 || q >= x.cols()) {
      throw IndexOutOfRange("pair index out of range");
    }
    scored.emplace_back(s[p], s[q]);
  }
  return two_afc(scored);
}

EvalReport evaluate(const Dataset& train, const Dataset& test, double alpha,
                    const PairPolicy& policy) {
  if (train.dim() != test.dim()) throw DimensionMismatch("train and test dimensions differ");
  EvalReport report;
  for (Task t : {Task::A, Task::B}) {
    const LdaClassifier clf = train_lda(train, t, alpha);
    const auto pairs = policy.n_pairs > 0
                           ? sample_pairs(test.labels(t), policy.n_pairs,
                                          policy.seed + (t == Task::A ? 0 : 1))
                           : all_pairs(test.labels(t));
    const double afc = two_afc(clf, test.samples(), pairs);
    const double j = fisher_J_star(split_by_task(test, t), alpha);
    if (t == Task::A) {
      report.two_afc_a = afc;
      report.j_star_a = j;
    } else {
      report.two_afc_b = afc;
      report.j_star_b = j;
    }
    if (clf.degenerate_means) report.notes += std::string("degenerate means for task ") + task_name(t) + "; ";
  }
  return report;
}

ShiftReport covariate_shift_experiment(const Dataset& train, const Dataset& test,
                                       const std::optional<FilterParams>& filter, double alpha,
                                       Task preserved, const PairPolicy& pairs) {
  if (train.dim() != test.dim()) throw DimensionMismatch("train and test dimensions differ");
  ShiftReport report;
  report.preserved = preserved;
  report.unfiltered = evaluate(train, test, alpha, pairs);
  if (filter) {
    const Dataset ftrain = apply_filter_batch(*filter, train).data;
    const Dataset ftest = apply_filter_batch(*filter, test).data;
    report.filtered = evaluate(ftrain, ftest, alpha, pairs);
  }
  return report;
}

}  // namespace ddf
