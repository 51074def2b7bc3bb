// Copyright 2026 The RIP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Brute-force reference computations used only by tests. Each one follows a
// different route from the library code it checks.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rip/designed.hpp"
#include "rip/geometry.hpp"

namespace rip::oracle {

// Angular matrix by intersecting each pixel's ray with the segments of the
// reference polyline (left column bottom-up, corner, top row left-to-right).
inline Matrix ray_intersection_matrix(const BlockGeometry& g, Direction d) {
  const int n = g.block_size();
  struct Node {
    double x, y;  // x = column, y = row
    int index;
  };
  std::vector<Node> poly;
  for (int r = n - 1; r >= 0; --r) poly.push_back({-1.0, double(r), 2 * n + 1 + r});
  poly.push_back({-1.0, -1.0, 0});
  for (int c = 0; c < 2 * n; ++c) poly.push_back({double(c), -1.0, 1 + c});

  // Image-space direction: rows grow downward.
  const double vx = d.dx;
  const double vy = -d.dy;
  Matrix m = Matrix::Zero(g.block_len(), g.ref_len());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      double best_t = std::numeric_limits<double>::infinity();
      int a_idx = -1, b_idx = -1;
      double best_u = 0.0;
      for (std::size_t s = 0; s + 1 < poly.size(); ++s) {
        const double ex = poly[s + 1].x - poly[s].x;
        const double ey = poly[s + 1].y - poly[s].y;
        // Solve (i, j) + t v = A + u e.
        const double det = vx * (-ey) - vy * (-ex);
        if (std::abs(det) < 1e-15) continue;
        const double rx = poly[s].x - i;
        const double ry = poly[s].y - j;
        const double t = (rx * (-ey) - ry * (-ex)) / det;
        const double u = (vx * ry - vy * rx) / det;
        if (t <= 0 || u < -1e-12 || u > 1 + 1e-12) continue;
        if (t < best_t - 1e-12) {
          best_t = t;
          a_idx = poly[s].index;
          b_idx = poly[s + 1].index;
          best_u = std::clamp(u, 0.0, 1.0);
        }
      }
      auto row = m.row(j * n + i);
      if (a_idx < 0) {
        // Missed the polyline: overshoot past one of its two ends.
        row[d.dy > 0 ? 2 * n : 3 * n] = 1.0;
        continue;
      }
      row[a_idx] += 1.0 - best_u;
      row[b_idx] += best_u;
    }
  }
  // Flush interpolation dust so sparsity comparisons are meaningful.
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (std::abs(m(r, c)) < 1e-9) m(r, c) = 0.0;
      if (std::abs(m(r, c) - 1.0) < 1e-9) m(r, c) = 1.0;
    }
  }
  return m;
}

// Planar weights by evaluating the per-pixel formula on each unit reference
// vector in turn.
inline Matrix planar_by_formula(const BlockGeometry& g) {
  const int n = g.block_size();
  Matrix m(g.block_len(), g.ref_len());
  for (int k = 0; k < g.ref_len(); ++k) {
    Vector e = Vector::Zero(g.ref_len());
    e[k] = 1.0;
    const double tr = e[n + 1];
    const double bl = e[3 * n];
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const double left = e[2 * n + 1 + j];
        const double top = e[1 + i];
        m(j * n + i, k) =
            ((n - 1 - i) * left + (i + 1) * tr + (n - 1 - j) * top + (j + 1) * bl) / (2.0 * n);
      }
    }
  }
  return m;
}

// Explicit inverse by Gauss-Jordan elimination with partial pivoting.
inline Matrix gauss_jordan_inverse(Matrix a) {
  const Eigen::Index n = a.rows();
  Matrix inv = Matrix::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    }
    if (a(pivot, col) == 0.0) throw std::runtime_error("singular");
    a.row(col).swap(a.row(pivot));
    inv.row(col).swap(inv.row(pivot));
    const double scale = a(col, col);
    for (Eigen::Index c = 0; c < n; ++c) {
      a(col, c) /= scale;
      inv(col, c) /= scale;
    }
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (Eigen::Index c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

// Y X^T (X X^T + lambda I)^{-1} with every product spelled out as loops.
inline Matrix normal_equations(const Matrix& x, const Matrix& y, double lambda) {
  const Eigen::Index m = x.rows(), n = y.rows(), s = x.cols();
  Matrix gram(m, m), cross(n, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      double acc = a == b ? lambda : 0.0;
      for (Eigen::Index t = 0; t < s; ++t) acc += x(a, t) * x(b, t);
      gram(a, b) = acc;
    }
  }
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      double acc = 0.0;
      for (Eigen::Index t = 0; t < s; ++t) acc += y(a, t) * x(b, t);
      cross(a, b) = acc;
    }
  }
  const Matrix inv = gauss_jordan_inverse(gram);
  Matrix out = Matrix::Zero(n, m);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      for (Eigen::Index t = 0; t < m; ++t) out(a, b) += cross(a, t) * inv(t, b);
    }
  }
  return out;
}

inline Vector multiply(const Matrix& m, const Vector& x) {
  Vector out(m.rows());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    double acc = 0.0;
    for (Eigen::Index c = 0; c < m.cols(); ++c) acc += m(r, c) * x[c];
    out[r] = acc;
  }
  return out;
}

inline double l2_distance(const Vector& a, const Vector& b) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(acc);
}

// Exhaustive argmin over (sample, mode) pairs, lowest index wins ties.
inline std::vector<int> exhaustive_labels(const std::vector<Matrix>& modes, const Matrix& x,
                                          const Matrix& y) {
  std::vector<int> labels(static_cast<std::size_t>(x.cols()));
  for (Eigen::Index s = 0; s < x.cols(); ++s) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < modes.size(); ++p) {
      const double e = l2_distance(y.col(s), multiply(modes[p], x.col(s)));
      if (e < best) {
        best = e;
        labels[static_cast<std::size_t>(s)] = static_cast<int>(p);
      }
    }
  }
  return labels;
}

// All top-left positions whose 3N+1 references lie inside the image.
inline std::vector<std::pair<int, int>> enumerate_valid_positions(int width, int height,
                                                                  const BlockGeometry& g) {
  std::vector<std::pair<int, int>> out;
  for (int r = 0; r + g.block_size() <= height; ++r) {
    for (int c = 0; c + g.block_size() <= width; ++c) {
      const int n = g.block_size();
      std::vector<std::pair<int, int>> refs{{r - 1, c - 1}};
      for (int k = 0; k < 2 * n; ++k) refs.emplace_back(r - 1, c + k);
      for (int k = 0; k < n; ++k) refs.emplace_back(r + k, c - 1);
      bool inside = true;
      for (auto [rr, cc] : refs) inside = inside && rr >= 0 && cc >= 0 && rr < height && cc < width;
      if (inside) out.emplace_back(r, c);
    }
  }
  return out;
}

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols,
                            double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = dist(rng);
  }
  return m;
}

}  // namespace rip::oracle
