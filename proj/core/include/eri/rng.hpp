/*
 * Copyright 2026 The ERI-Bench Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ERI_RNG_HPP_
#define ERI_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

namespace eri {

// Purpose tags partition the random streams so that, e.g., training and
// perturbation sampling never share draws even under the same seed.
enum class StreamTag : std::uint64_t {
  kInit = 1,
  kTraining = 2,
  kPerturbation = 3,
  kRedundancy = 4,
  kAlpha = 5,
  kPermutation = 6,
  kSampling = 7,
  kRandomExplainer = 8,
  kData = 9,
  kSeed = 10,
};

// Finalizer of SplitMix64; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x);

// Combines two words into one well-mixed word (order matters).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

// Counter-based generator keyed by (seed, tag, index). Two generators built
// from the same key produce identical streams; distinct keys give
// statistically independent streams. The draw sequence is fixed by this
// implementation, so results are bit-reproducible across platforms.
class Rng {
 public:
  Rng(std::uint64_t seed, StreamTag tag, std::uint64_t index);

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform();

  // Standard normal via Box-Muller; pairs are cached.
  double normal();

  // Uniform integer in [0, n). n must be positive.
  std::size_t below(std::size_t n);

  // Fisher-Yates shuffle driven by this stream.
  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = below(i);
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::uint64_t state_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace eri

#endif  // ERI_RNG_HPP_
