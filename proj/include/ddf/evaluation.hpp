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

// Machine-side evaluation: Fisher/LDA classification, two-alternative forced
// choice scoring, an exact linear-separability test and the covariate-shift
// harness.

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ddf/filters.hpp"
#include "ddf/fisher.hpp"

namespace ddf {

struct LdaClassifier {
  Eigen::VectorXd direction;
  double threshold = 0.0;
  bool degenerate_means = false;  // direction is 0; every sample predicts class 0

  double score(const Eigen::VectorXd& x) const { return direction.dot(x); }
  Eigen::VectorXd scores(const Eigen::MatrixXd& x) const;
  // Class 1 iff score > threshold.
  int predict(const Eigen::VectorXd& x) const { return score(x) > threshold ? 1 : 0; }
};

LdaClassifier train_lda(const Dataset& ds, Task task, double alpha = kDefaultAlpha);

// Fraction of training or test samples predicted correctly.
double accuracy(const LdaClassifier& clf, const Eigen::MatrixXd& x, const Labels& labels);

// (positive index, negative index) into a sample matrix.
using IndexPair = std::pair<Eigen::Index, Eigen::Index>;

// Every positive/negative combination.
std::vector<IndexPair> all_pairs(const Labels& labels);

// Up to n pairs without replacement: each sample appears in at most one pair.
// Up to n pairs, no image used twice, so at most min(#positive, #negative).
std::vector<IndexPair> sample_pairs(const Labels& labels, int n, std::uint64_t seed);

// Fraction of pairs whose positive scores above its negative; ties count 0.5.
// Throws EmptyPairs for an empty list.
double two_afc(const std::vector<std::pair<double, double>>& scored_pairs);
double two_afc(const LdaClassifier& clf, const Eigen::MatrixXd& x,
               const std::vector<IndexPair>& pairs);

// True iff some w has w'x > w'y for every x in x0 and every y in x1.
// Decided by a hinge-feasibility linear program: with margin 1 the optimum is
// 0 for separable sets and at least 2 for non-separable ones.
bool separable(const Eigen::MatrixXd& x0, const Eigen::MatrixXd& x1);

struct EvalReport {
  double two_afc_a = 0.0;
  double two_afc_b = 0.0;
  double j_star_a = 0.0;
  double j_star_b = 0.0;
  std::string notes;
};

struct PairPolicy {
  int n_pairs = 0;  // 0 means every positive/negative combination
  std::uint64_t seed = 0;
};

// Trains one LDA classifier per task on `train` and scores 2AFC on `test`.
// J* values are measured on `test`.
EvalReport evaluate(const Dataset& train, const Dataset& test, double alpha,
                    const PairPolicy& pairs = {});

struct ShiftReport {
  Task preserved = Task::A;
  EvalReport unfiltered;
  std::optional<EvalReport> filtered;

  // 2AFC of the preserved task on the test set for one leg.
  static double preserved_afc(const EvalReport& r, Task t) {
    return t == Task::A ? r.two_afc_a : r.two_afc_b;
  }
};

// Train on `train`, test on `test`, once on raw data and once with both sets
// passed through `filter` when given.
ShiftReport covariate_shift_experiment(const Dataset& train, const Dataset& test,
                                       const std::optional<FilterParams>& filter, double alpha,
                                       Task preserved, const PairPolicy& pairs = {});

}  // namespace ddf
