// Copyright 2026 The statemetric Authors.
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

#include "statemetric/linalg.hpp"
#include "statemetric/spaces.hpp"

namespace statemetric {

// Symmetric distance table on the points of a finite space.
class MetricTable {
 public:
  // Validates d(x,x) = 0, d(x,y) > 0 off the diagonal, symmetry within
  // 1e-12 (then symmetrized), and the triangle inequality within
  // `triangle_tolerance`. Throws DomainError naming the failing pair.
  MetricTable(FiniteSpace space, Matrix distances,
              double triangle_tolerance = 1e-9);

  const FiniteSpace& space() const { return space_; }
  std::size_t size() const { return space_.size(); }
  double operator()(std::size_t x, std::size_t y) const { return d_(x, y); }
  const Matrix& distances() const { return d_; }

  double diameter() const { return d_.max_abs(); }

 private:
  FiniteSpace space_;
  Matrix d_;
};

}  // namespace statemetric
