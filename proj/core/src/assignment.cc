/* Copyright 2026 The Framedrop Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "framedrop/assignment.h"

#include <limits>

namespace framedrop {
namespace {

// Requires rows <= cols. Indices are 1-based internally; column 0 is the
// virtual start column of each augmenting search.
std::vector<int> SolveWide(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  const int m = static_cast<int>(cost.cols());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= m; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

std::vector<int> SolveMinCostAssignment(const Eigen::MatrixXd& cost) {
  if (cost.rows() == 0 || cost.cols() == 0) {
    return std::vector<int>(cost.rows(), -1);
  }
  if (cost.rows() <= cost.cols()) return SolveWide(cost);
  const std::vector<int> col_to_row = SolveWide(cost.transpose());
  std::vector<int> row_to_col(cost.rows(), -1);
  for (int c = 0; c < static_cast<int>(col_to_row.size()); ++c) {
    if (col_to_row[c] >= 0) row_to_col[col_to_row[c]] = c;
  }
  return row_to_col;
}

std::vector<std::pair<int, int>> MaximizeScoreMatching(
    const Eigen::MatrixXd& score, double min_score) {
  // Ineligible pairs cost 0, the same as leaving both sides unmatched, so
  // the optimum over full assignments equals the optimum over matchings of
  // eligible pairs.
  const auto eligible = [&](int r, int c) {
    return score(r, c) >= min_score && score(r, c) > 0.0;
  };
  Eigen::MatrixXd cost = Eigen::MatrixXd::Zero(score.rows(), score.cols());
  bool any = false;
  for (int r = 0; r < score.rows(); ++r) {
    for (int c = 0; c < score.cols(); ++c) {
      if (eligible(r, c)) {
        cost(r, c) = -score(r, c);
        any = true;
      }
    }
  }
  std::vector<std::pair<int, int>> matches;
  if (!any) return matches;
  const std::vector<int> row_to_col = SolveMinCostAssignment(cost);
  for (int r = 0; r < static_cast<int>(row_to_col.size()); ++r) {
    const int c = row_to_col[r];
    if (c >= 0 && eligible(r, c)) matches.emplace_back(r, c);
  }
  return matches;
}

}  // namespace framedrop
