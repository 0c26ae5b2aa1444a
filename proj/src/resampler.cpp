/*
 * Copyright 2026 The textml Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "textml/resampler.hpp"

#include <algorithm>
#include <map>

namespace textml {

ResampleResult oversample(const FeatureMatrix& X, const std::vector<int>& y,
                          const ResampleSpec& spec) {
  if (static_cast<std::size_t>(X.rows()) != y.size()) {
    throw std::invalid_argument("oversample: X rows and y length differ");
  }
  if (spec.target == ResampleSpec::Target::Off) {
    return {X, y};
  }
  if (y.empty()) throw std::invalid_argument("oversample: empty input");
  if (spec.target == ResampleSpec::Target::Fixed && spec.fixed_target < 1) {
    throw std::invalid_argument("oversample: fixed target must be >= 1");
  }

  std::map<int, std::vector<int>> rows_by_class;  // ordered by class index
  for (std::size_t i = 0; i < y.size(); ++i) {
    rows_by_class[y[i]].push_back(static_cast<int>(i));
  }

  std::size_t target = 0;
  if (spec.target == ResampleSpec::Target::MaxClassCount) {
    for (const auto& [c, rows] : rows_by_class) target = std::max(target, rows.size());
  } else {
    target = static_cast<std::size_t>(spec.fixed_target);
  }

  // Originals first, then duplicates grouped by ascending class index.
  std::vector<int> source_rows(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) source_rows[i] = static_cast<int>(i);
  for (const auto& [c, rows] : rows_by_class) {
    if (rows.size() >= target) continue;
    Rng rng(mix_seed(spec.seed, static_cast<std::uint64_t>(c)));
    for (std::size_t need = target - rows.size(); need > 0; --need) {
      source_rows.push_back(rows[rng.below(rows.size())]);
    }
  }

  ResampleResult out;
  out.y.reserve(source_rows.size());
  std::vector<Eigen::Triplet<Scalar>> triplets;
  for (std::size_t i = 0; i < source_rows.size(); ++i) {
    const int src = source_rows[i];
    out.y.push_back(y[static_cast<std::size_t>(src)]);
    for (FeatureMatrix::InnerIterator it(X, src); it; ++it) {
      triplets.emplace_back(static_cast<int>(i), static_cast<int>(it.col()), it.value());
    }
  }
  out.X.resize(static_cast<Eigen::Index>(source_rows.size()), X.cols());
  out.X.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

}  // namespace textml
