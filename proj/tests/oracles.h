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

// Reference implementations used only by tests. They are deliberately naive
// and share no code with the library.

#ifndef SANGERNET_TESTS_ORACLES_H_
#define SANGERNET_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Cyclic Jacobi rotations. Returns eigenvalues (descending) and the
// matching eigenvectors as columns.
inline std::pair<Vec, Mat> jacobi_eigen(Mat a, int sweeps = 100) {
  const Eigen::Index n = a.rows();
  Mat v = Mat::Identity(n, n);
  for (int s = 0; s < sweeps; ++s) {
    double off = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-30) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](Eigen::Index x, Eigen::Index y) { return a(x, x) > a(y, y); });
  Vec vals(n);
  Mat vecs(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    vals(k) = a(idx[static_cast<std::size_t>(k)], idx[static_cast<std::size_t>(k)]);
    vecs.col(k) = v.col(idx[static_cast<std::size_t>(k)]);
  }
  return {vals, vecs};
}

// Second-largest eigenvalue magnitude of a symmetric matrix.
inline double second_magnitude(const Mat& w) {
  Vec vals = jacobi_eigen(w).first;
  std::vector<double> mags(vals.data(), vals.data() + vals.size());
  for (double& m : mags) m = std::abs(m);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  // The top magnitude belongs to the eigenvalue 1 of a stochastic matrix.
  return mags.size() > 1 ? mags[1] : 0.0;
}

inline Vec power_method(const Mat& c, Vec x, int iters) {
  for (int t = 0; t < iters; ++t) {
    x = c * x;
    x /= x.norm();
  }
  return x;
}

// Deflated power method with Rayleigh-quotient eigenvalue estimates, each
// column started from the matching column of `init`.
inline Mat deflated_power_method(const Mat& c, const Mat& init, int iters) {
  Mat q = init;
  std::vector<double> lambda;
  for (Eigen::Index k = 0; k < init.cols(); ++k) {
    Mat deflated = c;
    for (Eigen::Index p = 0; p < k; ++p) {
      deflated -= lambda[static_cast<std::size_t>(p)] * q.col(p) * q.col(p).transpose();
    }
    q.col(k) = power_method(deflated, init.col(k), iters);
    lambda.push_back(q.col(k).dot(c * q.col(k)));
  }
  return q;
}

// Sanger direction written element by element.
inline Mat sanger(const Mat& c, const Mat& x) {
  const Eigen::Index d = x.rows(), k = x.cols();
  Mat out(d, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index r = 0; r < d; ++r) {
      double cx = 0.0;
      for (Eigen::Index s = 0; s < d; ++s) cx += c(r, s) * x(s, j);
      double corr = 0.0;
      for (Eigen::Index p = 0; p <= j; ++p) {
        double g = 0.0;  // x_p^T C x_j
        for (Eigen::Index a = 0; a < d; ++a)
          for (Eigen::Index b = 0; b < d; ++b) g += x(a, p) * c(a, b) * x(b, j);
        corr += x(r, p) * g;
      }
      out(r, j) = cx - corr;
    }
  }
  return out;
}

inline Mat random_spd(Eigen::Index d, unsigned seed) {
  std::srand(seed);
  const Mat a = Mat::Random(d, d);
  return a * a.transpose() + 0.1 * Mat::Identity(d, d);
}

}  // namespace oracle

#endif  // SANGERNET_TESTS_ORACLES_H_
