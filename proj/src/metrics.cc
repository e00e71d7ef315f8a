// Copyright 2026 The sangernet Authors
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

#include "sangernet/metrics.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "sangernet/error.h"

namespace sangernet {
namespace {

constexpr double kSqrt3 = 1.7320508075688772;

void check_estimates(std::span<const Matrix> estimates) {
  if (estimates.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no estimates given");
  }
  for (const auto& x : estimates) {
    if (x.rows() != estimates.front().rows() || x.cols() != estimates.front().cols()) {
      throw Error(ErrorCode::kInvalidArgument, "estimate dimensions differ across nodes");
    }
  }
}

Matrix mean_estimate(std::span<const Matrix> estimates) {
  Matrix mean = Matrix::Zero(estimates.front().rows(), estimates.front().cols());
  for (const auto& x : estimates) mean += x;
  return mean / static_cast<double>(estimates.size());
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Least-squares slope of log(values) against index positions.
double log_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double ly = std::log(ys[i]);
    sx += xs[i];
    sy += ly;
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ly;
  }
  const double denom = n * sxx - sx * sx;
  return denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

}  // namespace

Vector column_angle_errors(std::span<const Matrix> estimates,
                           const EigenBasis& truth) {
  check_estimates(estimates);
  const Eigen::Index k = estimates.front().cols();
  if (truth.size() < k || truth.vectors.rows() != estimates.front().rows()) {
    throw Error(ErrorCode::kInvalidArgument, "truth basis does not match estimates");
  }
  Vector errors = Vector::Zero(k);
  for (const auto& x : estimates) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const double sq = x.col(j).squaredNorm();
      if (!(sq > 0.0)) {
        throw Error(ErrorCode::kUndefinedAngle,
                    "zero-norm estimate column " + std::to_string(j + 1));
      }
      const double dot = x.col(j).dot(truth.vectors.col(j));
      const double cos2 = std::min(1.0, dot * dot / sq);
      errors(j) += 1.0 - cos2;
    }
  }
  return errors / static_cast<double>(estimates.size());
}

double avg_angle_error(std::span<const Matrix> estimates,
                       const EigenBasis& truth) {
  return column_angle_errors(estimates, truth).mean();
}

double avg_angle_error(const Matrix& estimate, const EigenBasis& truth) {
  return avg_angle_error(std::span<const Matrix>(&estimate, 1), truth);
}

double consensus_deviation(std::span<const Matrix> estimates) {
  check_estimates(estimates);
  const Matrix mean = mean_estimate(estimates);
  double worst = 0.0;
  for (const auto& x : estimates) {
    worst = std::max(worst, (x - mean).colwise().norm().maxCoeff());
  }
  return worst;
}

double mean_consensus_deviation(std::span<const Matrix> estimates) {
  check_estimates(estimates);
  const Matrix mean = mean_estimate(estimates);
  double total = 0.0;
  for (const auto& x : estimates) total += (x - mean).colwise().norm().maxCoeff();
  return total / static_cast<double>(estimates.size());
}

double rayleigh(const Matrix& c, const Vector& x) { return x.dot(c * x); }

double subspace_distance(const Matrix& estimate, const Matrix& truth) {
  const Matrix qx = qr_orthonormalize(estimate);
  const Matrix qt = qr_orthonormalize(truth);
  Eigen::JacobiSVD<Matrix> svd(qt.transpose() * qx);
  const double smin = svd.singularValues().minCoeff();
  return std::sqrt(std::max(0.0, 1.0 - smin * smin));
}

bool ProbeReport::all_passed() const {
  return std::all_of(series.begin(), series.end(),
                     [](const ProbeSeries& s) { return !s.applicable || s.passed; });
}

const ProbeSeries* ProbeReport::find(const std::string& name) const {
  for (const auto& s : series) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

void ProbeReport::write_csv(std::ostream& out) const {
  out << "iter";
  for (const auto& s : series) out << ',' << s.name;
  out << '\n';
  for (std::size_t r = 0; r < iterations.size(); ++r) {
    out << iterations[r];
    for (const auto& s : series) out << ',' << format_double(s.values[r]);
    out << '\n';
  }
}

void ProbeReport::write_summary(std::ostream& out) const {
  for (const auto& s : series) {
    out << s.name << ": " << (!s.applicable ? "n/a" : s.passed ? "pass" : "FAIL");
    if (!s.detail.empty()) out << " (" << s.detail << ')';
    out << '\n';
  }
}

ProbeReport bound_probes(std::span<const Snapshot> snapshots,
                         const ProbeContext& ctx) {
  if (snapshots.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "bound probes need at least two snapshots");
  }
  const std::size_t nodes = snapshots.front().estimates.size();
  if (nodes == 0 || ctx.local_covariances.size() != nodes) {
    throw Error(ErrorCode::kInsufficientData,
                "snapshots and local covariances disagree on node count");
  }
  const Eigen::Index d = ctx.global_covariance.rows();
  const Eigen::Index kk = snapshots.front().estimates.front().cols();
  if (ctx.truth.size() != d) {
    throw Error(ErrorCode::kInvalidArgument, "bound probes need a full truth basis");
  }

  std::vector<double> local_top(nodes);
  double local_max = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    local_top[i] = top_eigenvalue(ctx.local_covariances[i]);
    local_max = std::max(local_max, local_top[i]);
  }

  const std::size_t rows = snapshots.size();
  ProbeReport report;
  report.iterations.reserve(rows);
  auto add = [&](std::string name) -> ProbeSeries& {
    report.series.push_back({std::move(name), std::vector<double>(rows, 0.0), true, true, {}});
    return report.series.back();
  };
  std::vector<std::size_t> norm_idx, ray_idx, sanger_idx, h_idx, low_idx, up_idx, gap_idx;
  for (Eigen::Index k = 1; k <= kk; ++k) {
    const std::string s = std::to_string(k);
    norm_idx.push_back(report.series.size()), add("norm_" + s);
    ray_idx.push_back(report.series.size()), add("rayleigh_" + s);
    sanger_idx.push_back(report.series.size()), add("sanger_" + s);
    h_idx.push_back(report.series.size()), add("hdev_" + s);
    low_idx.push_back(report.series.size()), add("lower_" + s);
    up_idx.push_back(report.series.size()), add("upper_" + s);
    gap_idx.push_back(report.series.size()), add("rayleigh_gap_" + s);
  }
  const std::size_t cons_idx = report.series.size();
  add("consensus");
  const std::size_t cons_mean_idx = report.series.size();
  add("consensus_mean");
  const std::size_t step_idx = report.series.size();
  add("step_size");

  // Normalized upper ratio per column, used by the per-step decay check.
  std::vector<std::vector<double>> upper_ratio(static_cast<std::size_t>(kk),
                                               std::vector<double>(rows, 0.0));

  for (std::size_t r = 0; r < rows; ++r) {
    const auto& snap = snapshots[r];
    if (snap.estimates.size() != nodes) {
      throw Error(ErrorCode::kInsufficientData, "snapshot node count changed");
    }
    report.iterations.push_back(snap.iteration);
    const std::span<const Matrix> est(snap.estimates);
    const Matrix xbar = mean_estimate(est);
    std::vector<Matrix> directions(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
      directions[i] = sanger_direction(ctx.local_covariances[i], snap.estimates[i]);
    }
    for (Eigen::Index k = 0; k < kk; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      const double kd = static_cast<double>(k + 1);
      double max_norm = 0.0, max_ray = 0.0, max_sanger = 0.0, max_dev = 0.0;
      Vector h = Vector::Zero(d);
      for (std::size_t i = 0; i < nodes; ++i) {
        const Matrix& ci = ctx.local_covariances[i];
        const Vector xik = snap.estimates[i].col(k);
        max_norm = std::max(max_norm, xik.norm());
        max_ray = std::max(max_ray, rayleigh(ci, xik));
        const double bound =
            3.0 * local_top[i] * local_top[i] * (3.0 * kd - 2.0) * (3.0 * kd + 1.0);
        const double hn2 = directions[i].col(k).squaredNorm();
        max_sanger = std::max(max_sanger, bound > 0.0 ? hn2 / bound : 0.0);
        h += directions[i].col(k) -
             sanger_column(ci, snap.estimates[i], k, xbar.col(k));
        max_dev = std::max(max_dev, (xik - xbar.col(k)).norm());
      }
      h /= static_cast<double>(nodes);
      const double h_bound = 3.0 * (kd + 2.0) * local_max * max_dev;
      const double h_norm = h.norm();
      report.series[norm_idx[ku]].values[r] = max_norm;
      report.series[ray_idx[ku]].values[r] = max_ray;
      report.series[sanger_idx[ku]].values[r] = max_sanger;
      report.series[h_idx[ku]].values[r] =
          h_bound > 0.0 ? h_norm / h_bound : (h_norm <= 1e-14 ? 0.0 : INFINITY);

      const Vector z = coefficients(xbar.col(k), ctx.truth);
      const double lower = z.head(k).squaredNorm();
      const double upper = z.tail(d - k - 1).squaredNorm();
      report.series[low_idx[ku]].values[r] = lower;
      report.series[up_idx[ku]].values[r] = upper;
      upper_ratio[ku][r] = z(k) != 0.0 ? upper / (z(k) * z(k)) : INFINITY;
      report.series[gap_idx[ku]].values[r] =
          std::abs(ctx.truth.values(k) - rayleigh(ctx.global_covariance, xbar.col(k)));
    }
    report.series[cons_idx].values[r] = consensus_deviation(est);
    report.series[cons_mean_idx].values[r] = mean_consensus_deviation(est);
  }

  const double step_bound = step_size_bound(ctx.lambda1, static_cast<int>(kk), ctx.min_self_weight);
  auto& step = report.series[step_idx];
  std::fill(step.values.begin(), step.values.end(), ctx.alpha / step_bound);
  step.passed = ctx.alpha <= step_bound;
  step.detail = "alpha=" + format_double(ctx.alpha) + " bound=" + format_double(step_bound);

  auto check_max = [](ProbeSeries& s, double limit, bool strict) {
    const double worst = *std::max_element(s.values.begin(), s.values.end());
    s.passed = strict ? worst < limit : worst <= limit;
    s.detail = "max=" + format_double(worst) + " limit=" + format_double(limit);
  };
  for (Eigen::Index k = 0; k < kk; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    check_max(report.series[norm_idx[ku]], kSqrt3, true);
    check_max(report.series[ray_idx[ku]], 1.0 / ctx.alpha, true);
    check_max(report.series[sanger_idx[ku]], 1.0 + 1e-12, false);
    check_max(report.series[h_idx[ku]], 1.0 + 1e-9, false);
    report.series[gap_idx[ku]].applicable = false;
    report.series[gap_idx[ku]].detail =
        "final=" + format_double(report.series[gap_idx[ku]].values.back());

    const bool coefficient_bounds = nodes == 1 && (ctx.modified || k == 0);

    // Upper coefficients: per-step contraction of the normalized ratio.
    auto& up = report.series[up_idx[ku]];
    up.applicable = coefficient_bounds && k + 1 < d;
    if (up.applicable) {
      const double lk = ctx.truth.values(k);
      const double lk1 = ctx.truth.values(k + 1);
      const double rho = std::pow((1.0 + ctx.alpha * lk1) / (1.0 + ctx.alpha * lk), 2);
      std::size_t violations = 0;
      for (std::size_t r = 1; r < rows; ++r) {
        const double steps = static_cast<double>(report.iterations[r] - report.iterations[r - 1]);
        const double allowed = std::pow(rho, steps) * upper_ratio[ku][r - 1] + 1e-10;
        if (upper_ratio[ku][r] > allowed) ++violations;
      }
      up.passed = violations == 0;
      up.detail = "rho=" + format_double(rho) + " violations=" + std::to_string(violations);
    }

    // Lower coefficients: non-increasing after a 10% burn-in, geometric fit.
    auto& low = report.series[low_idx[ku]];
    low.applicable = coefficient_bounds && k > 0;
    if (low.applicable) {
      const std::size_t burn = rows / 10;
      bool monotone = true;
      std::vector<double> xs, ys;
      for (std::size_t r = burn; r < rows; ++r) {
        if (r > burn && low.values[r] > low.values[r - 1] * (1.0 + 1e-9) + 1e-30) monotone = false;
        if (low.values[r] > 1e-28) {
          xs.push_back(static_cast<double>(report.iterations[r]));
          ys.push_back(low.values[r]);
        }
      }
      const double ratio = xs.size() >= 2 ? std::exp(log_slope(xs, ys)) : 0.0;
      low.passed = monotone && ratio < 1.0;
      low.detail = "fit_ratio=" + format_double(ratio) + (monotone ? "" : " non-monotone");
    }
  }

  auto& cons = report.series[cons_idx];
  const std::size_t tail = std::max<std::size_t>(1, rows / 10);
  double lo = INFINITY, hi = 0.0, sum = 0.0;
  for (std::size_t r = rows - tail; r < rows; ++r) {
    lo = std::min(lo, cons.values[r]);
    hi = std::max(hi, cons.values[r]);
    sum += cons.values[r];
  }
  const double plateau = sum / static_cast<double>(tail);
  const double fitted = ctx.alpha > 0.0 ? plateau * (1.0 - ctx.beta) / ctx.alpha : 0.0;
  cons.passed = plateau == 0.0 || (hi - lo) <= 0.1 * plateau;
  cons.detail = "plateau=" + format_double(plateau) + " fitted_C=" + format_double(fitted);
  report.series[cons_mean_idx].applicable = false;
  return report;
}

}  // namespace sangernet
