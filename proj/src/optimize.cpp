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

#include "ddf/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>

#include "ddf/error.hpp"
#include "ddf/io.hpp"

namespace ddf {

const char* stop_reason_name(StopReason reason) {
  switch (reason) {
    case StopReason::IterationBudget:
      return "iteration budget";
    case StopReason::EvalBudget:
      return "evaluation budget";
    case StopReason::GradientTolerance:
      return "gradient tolerance";
    case StopReason::RelativeChange:
      return "relative change";
    case StopReason::LineSearchFailure:
      return "line search failure";
  }
  return "?";
}

std::vector<TraceRecord> DescentTrace::accepted() const {
  std::vector<TraceRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out),
               [](const TraceRecord& r) { return r.accepted; });
  return out;
}

void DescentTrace::write_csv(std::ostream& os) const {
  os << "eval,R,JstarA,JstarB,gradnorm,step\n";
  for (const auto& r : records) {
    os << r.eval << ',' << format_double(r.r) << ',' << format_double(r.j_star_a) << ','
       << format_double(r.j_star_b) << ',' << format_double(r.grad_norm) << ','
       << format_double(r.step) << '\n';
  }
}

namespace {

class Minimizer {
 public:
  Minimizer(const Dataset& ds, const ObjectiveConfig& cfg) : ds_(ds), cfg_(cfg) {}

  // Evaluates at theta and appends a trace record. Numerical failures at
  // trial points are reported as nullopt so the line search can back off.
  std::optional<ObjectiveValue> eval(const FilterParams& fp, double step, bool must_succeed) {
    std::optional<ObjectiveValue> v;
    try {
      v = evaluate_objective(fp, ds_, cfg_, true);
    } catch (const NumericalError&) {
      if (must_succeed) throw;
    }
    TraceRecord rec;
    rec.eval = evals_++;
    rec.iteration = iteration_;
    rec.step = step;
    if (v) {
      rec.r = v->r;
      rec.j_star_a = v->j_star_a;
      rec.j_star_b = v->j_star_b;
      rec.grad_norm = v->gradient.norm();
      rec.floor_active = v->floor_active;
    } else {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      rec.r = rec.j_star_a = rec.j_star_b = rec.grad_norm = nan;
    }
    trace_.records.push_back(rec);
    return v;
  }

  MinimizeResult run(const FilterParams& theta0) {
    const bool use_cg = cfg_.optimizer == Optimizer::ConjugateGradient;
    FilterParams x = theta0;
    ObjectiveValue fx = *eval(x, 0.0, true);
    mark_accepted(x);

    MinimizeResult result{x, {}, StopReason::IterationBudget, false, fx};
    Eigen::VectorXd dir = -fx.gradient;
    double step = cfg_.initial_step / std::max(fx.gradient.norm(), 1e-300);

    while (true) {
      if (fx.gradient.norm() < cfg_.grad_tol) {
        result.stop = StopReason::GradientTolerance;
        break;
      }
      if (iteration_ >= cfg_.max_iters) {
        result.stop = StopReason::IterationBudget;
        break;
      }
      double slope = fx.gradient.dot(dir);
      bool steepest = !use_cg;
      if (!(slope < 0.0)) {
        dir = -fx.gradient;
        slope = -fx.gradient.squaredNorm();
        steepest = true;
      }

      std::optional<std::pair<FilterParams, ObjectiveValue>> next;
      bool out_of_evals = false;
      while (true) {
        double t = step;
        for (int k = 0; k < cfg_.max_backtracks; ++k, t *= cfg_.shrink) {
          if (evals_ >= cfg_.max_evals) {
            out_of_evals = true;
            break;
          }
          FilterParams trial = x.with_theta(x.theta() + t * dir);
          auto ft = eval(trial, t, false);
          if (ft && ft->r <= fx.r + cfg_.armijo * t * slope) {
            step = t;
            next.emplace(std::move(trial), std::move(*ft));
            break;
          }
        }
        if (next || out_of_evals || steepest) break;
        // A conjugate direction that admits no Armijo step gets one retry
        // along the negative gradient.
        dir = -fx.gradient;
        slope = -fx.gradient.squaredNorm();
        steepest = true;
      }

      if (out_of_evals) {
        result.stop = StopReason::EvalBudget;
        break;
      }
      if (!next) {
        result.stop = StopReason::LineSearchFailure;
        result.line_search_failed = true;
        break;
      }

      const double previous_r = fx.r;
      const Eigen::VectorXd previous_grad = fx.gradient;
      x = std::move(next->first);
      fx = std::move(next->second);
      ++iteration_;
      mark_accepted(x);

      if (std::abs(previous_r - fx.r) <= cfg_.rel_tol * std::max(1.0, std::abs(previous_r))) {
        result.stop = StopReason::RelativeChange;
        break;
      }

      if (use_cg) {
        const double denom = previous_grad.squaredNorm();
        const double beta_pr =
            std::max(0.0, fx.gradient.dot(fx.gradient - previous_grad) / denom);
        dir = -fx.gradient + beta_pr * dir;
      } else {
        dir = -fx.gradient;
      }
      step *= cfg_.grow;
    }

    if (cfg_.snapshot_stride > 0 && trace_.snapshots.back().iteration != iteration_) {
      trace_.snapshots.push_back({iteration_, x.theta()});
    }
    result.theta = std::move(x);
    result.final_value = std::move(fx);
    result.trace = std::move(trace_);
    return result;
  }

 private:
  void mark_accepted(const FilterParams& x) {
    TraceRecord& rec = trace_.records.back();
    rec.accepted = true;
    rec.iteration = iteration_;
    if (cfg_.snapshot_stride > 0 && iteration_ % cfg_.snapshot_stride == 0) {
      trace_.snapshots.push_back({iteration_, x.theta()});
    }
  }

  const Dataset& ds_;
  const ObjectiveConfig& cfg_;
  DescentTrace trace_;
  int evals_ = 0;
  int iteration_ = 0;
};

}  // namespace

MinimizeResult minimize(const Dataset& ds, const FilterParams& theta0, const ObjectiveConfig& cfg) {
  cfg.validate();
  theta0.check_input(ds.dim());
  return Minimizer(ds, cfg).run(theta0);
}

}  // namespace ddf
