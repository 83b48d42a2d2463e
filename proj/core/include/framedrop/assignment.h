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

#ifndef FRAMEDROP_ASSIGNMENT_H_
#define FRAMEDROP_ASSIGNMENT_H_

#include <utility>
#include <vector>

#include <Eigen/Core>

namespace framedrop {

// Minimum-cost rectangular linear assignment (Hungarian method with
// potentials, O(n^2 m)). Every row is assigned when rows <= cols, every
// column otherwise. Returns, per row, the assigned column or -1.
std::vector<int> SolveMinCostAssignment(const Eigen::MatrixXd& cost);

// Maximizes the summed score over pairs whose score is >= min_score and
// strictly positive. Pairs below that are never returned. Result holds
// (row, col) pairs sorted by row.
std::vector<std::pair<int, int>> MaximizeScoreMatching(
    const Eigen::MatrixXd& score, double min_score);

}  // namespace framedrop

#endif  // FRAMEDROP_ASSIGNMENT_H_
