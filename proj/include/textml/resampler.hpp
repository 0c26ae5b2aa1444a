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

#ifndef TEXTML_RESAMPLER_HPP
#define TEXTML_RESAMPLER_HPP

#include <cstdint>
#include <vector>

#include "textml/types.hpp"

namespace textml {

struct ResampleSpec {
  enum class Target {
    MaxClassCount,  // raise every class to the largest class count (default)
    Fixed,          // raise classes below fixed_target to it; larger classes untouched
    Off,            // pass-through
  };

  Target target = Target::MaxClassCount;
  int fixed_target = 0;  // >= 1 when target == Fixed
  std::uint64_t seed = 0;
};

struct ResampleResult {
  FeatureMatrix X;
  std::vector<int> y;
};

// Random oversampling: rows of under-target classes are duplicated uniformly
// with replacement (exact copies, never synthesized). All original rows stay
// in place; duplicates follow, grouped by ascending class index. Classes at
// or above target are never shrunk.
ResampleResult oversample(const FeatureMatrix& X, const std::vector<int>& y,
                          const ResampleSpec& spec);

}  // namespace textml

#endif  // TEXTML_RESAMPLER_HPP
