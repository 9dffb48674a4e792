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

#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <vector>

#include "ddf/objective.hpp"

namespace ddf {

// One objective + gradient evaluation.
struct TraceRecord {
  int eval = 0;
  int iteration = 0;  // accepted steps so far, including this one when accepted
  double r = 0.0;
  double j_star_a = 0.0;
  double j_star_b = 0.0;
  double grad_norm = 0.0;
  double step = 0.0;  // trial step length along the search direction
  bool accepted = false;
  bool floor_active = false;
};

struct ThetaSnapshot {
  int iteration = 0;
  Eigen::VectorXd theta;
};

struct DescentTrace {
  std::vector<TraceRecord> records;
  std::vector<ThetaSnapshot> snapshots;

  std::vector<TraceRecord> accepted() const;
  // CSV with header "eval,R,JstarA,JstarB,gradnorm,step", one row per evaluation.
  void write_csv(std::ostream& os) const;
};

enum class StopReason { IterationBudget, EvalBudget, GradientTolerance, RelativeChange, LineSearchFailure };

const char* stop_reason_name(StopReason reason);

struct MinimizeResult {
  FilterParams theta;
  DescentTrace trace;
  StopReason stop = StopReason::IterationBudget;
  bool line_search_failed = false;  // warning flag; theta is the best iterate found
  ObjectiveValue final_value;
};

// Steepest descent or Polak-Ribiere conjugate gradient with Armijo
// backtracking. Accepted iterates never increase R.
MinimizeResult minimize(const Dataset& ds, const FilterParams& theta0, const ObjectiveConfig& cfg);

}  // namespace ddf
