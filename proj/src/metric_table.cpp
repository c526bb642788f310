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


#include "statemetric/metric_table.hpp"

#include <cmath>
#include <string>

#include "statemetric/error.hpp"

namespace statemetric {

MetricTable::MetricTable(FiniteSpace space, Matrix distances,
                         double triangle_tolerance)
    : space_(std::move(space)), d_(std::move(distances)) {
  const std::size_t n = space_.size();
  if (d_.rows() != n || d_.cols() != n)
    throw ShapeMismatch("distance table size differs from point count");
  if (!d_.all_finite()) throw DomainError("distance table has non-finite entries");
  auto pair_name = [&](std::size_t x, std::size_t y) {
    return "(" + space_.label(x) + ", " + space_.label(y) + ")";
  };
  for (std::size_t x = 0; x < n; ++x) {
    if (d_(x, x) != 0.0)
      throw DomainError("distance table diagonal must be zero at " + pair_name(x, x));
    for (std::size_t y = x + 1; y < n; ++y) {
      if (std::abs(d_(x, y) - d_(y, x)) > 1e-12 * std::max(1.0, d_(x, y)))
        throw DomainError("distance table is not symmetric at " + pair_name(x, y));
      if (!(d_(x, y) > 0.0))
        throw DomainError("distance must be positive at " + pair_name(x, y));
      const double s = 0.5 * (d_(x, y) + d_(y, x));
      d_(x, y) = s;
      d_(y, x) = s;
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (d_(x, z) > d_(x, y) + d_(y, z) + triangle_tolerance)
          throw DomainError("triangle inequality fails for " + pair_name(x, z) +
                            " through " + space_.label(y));
}

}  // namespace statemetric
