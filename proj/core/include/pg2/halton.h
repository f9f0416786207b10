/*
 * Copyright 2026 The PG2 Authors.
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

#ifndef PG2_HALTON_H_
#define PG2_HALTON_H_

#include <cstdint>
#include <vector>

namespace pg2 {

// Largest supported Halton dimension (size of the prime-base table).
inline constexpr int kMaxHaltonDimension = 512;

// j-th prime, 0-based (2, 3, 5, ...). j < kMaxHaltonDimension.
uint32_t HaltonBase(int j);

// Van der Corput radical inverse of `index` in `base`; lies in [0, 1).
double RadicalInverse(uint64_t index, uint32_t base);

// Unscrambled Halton point number `index` (>= 1) in [0,1)^dim: coordinate j
// is the radical inverse of index in the j-th prime base. Throws
// Error(kCapacity) past kMaxHaltonDimension.
std::vector<double> HaltonPoint(uint64_t index, int dim);

}  // namespace pg2

#endif  // PG2_HALTON_H_
