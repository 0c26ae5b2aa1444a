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

#ifndef TEXTML_TYPES_HPP
#define TEXTML_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace textml {

using Scalar = double;

// Documents are rows; row-major keeps per-document iteration cheap.
using FeatureMatrix = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;
using SparseVector = Eigen::SparseVector<Scalar>;
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Input that cannot be processed (malformed files, unknown labels,
// incompatible containers). The CLI maps this family to exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed file content; messages carry line numbers where available.
struct ParseError : DataError {
  using DataError::DataError;
};

// Invalid command combinations; the CLI maps this to exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// splitmix64. <random> distributions are implementation-defined, so every
// sampling decision in the library goes through this generator to keep runs
// reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n), unbiased via rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % n;
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::uint64_t state_;
};

// Derives independent substreams from a master seed, so the result of any
// stage does not depend on how many random draws earlier stages consumed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  Rng r(seed ^ (stream * 0xD6E8FEB86659FD93ull + 0xA5A5A5A5A5A5A5A5ull));
  r.next();
  return r.next();
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix_seed(mix_seed(seed, a), b);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                              std::uint64_t c) {
  return mix_seed(mix_seed(seed, a, b), c);
}

inline SparseVector row_of(const FeatureMatrix& m, Eigen::Index i) {
  SparseVector v(m.cols());
  for (FeatureMatrix::InnerIterator it(m, i); it; ++it) {
    v.insertBack(it.col()) = it.value();
  }
  return v;
}

}  // namespace textml

#endif  // TEXTML_TYPES_HPP
