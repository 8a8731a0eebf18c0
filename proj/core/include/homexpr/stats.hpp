// Copyright 2026 The homexpr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace homexpr {

struct MeanEstimate {
  double mean = 0.0;
  /// Sample standard deviation / sqrt(n); 0 for n < 2.
  double std_error = 0.0;
};

MeanEstimate mean_estimate(std::span<const double> values);

/// sup_x |F_n(x) - cdf(x)| for the empirical CDF of `values`.
double ks_statistic(std::vector<double> values, const std::function<double(double)>& cdf);

}  // namespace homexpr
