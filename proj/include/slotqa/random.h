// Copyright 2026 The SlotQA Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLOTQA_RANDOM_H_
#define SLOTQA_RANDOM_H_

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace slotqa {

// Seeded generator whose output is identical on every platform.
// std::uniform_int_distribution is implementation-defined, so bounded draws
// are done here by rejection sampling on the raw 64-bit stream.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(Mix(seed)) {}
  SeededRng(std::uint64_t seed, std::uint64_t stream)
      : engine_(Mix(seed ^ Mix(stream + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform in [0, n). n must be positive.
  std::uint64_t Below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform k-subset of {0..n-1} in increasing order (partial Fisher-Yates).
  std::vector<std::size_t> SampleIndices(std::size_t n, std::size_t k) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    if (k > n) k = n;
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t j = i + static_cast<std::size_t>(Below(n - i));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
  }

 private:
  static std::uint64_t Mix(std::uint64_t z) {
    // SplitMix64 finalizer.
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace slotqa

#endif  // SLOTQA_RANDOM_H_
