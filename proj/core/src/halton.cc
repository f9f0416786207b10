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

#include "pg2/halton.h"

#include <array>
#include <string>

#include "pg2/error.h"

namespace pg2 {
namespace {

constexpr std::array<uint32_t, kMaxHaltonDimension> MakePrimes() {
  std::array<uint32_t, kMaxHaltonDimension> primes{};
  int count = 0;
  for (uint32_t candidate = 2; count < kMaxHaltonDimension; ++candidate) {
    bool prime = true;
    for (int i = 0; i < count && primes[i] * primes[i] <= candidate; ++i) {
      if (candidate % primes[i] == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes[count++] = candidate;
  }
  return primes;
}

constexpr auto kPrimes = MakePrimes();

}  // namespace

uint32_t HaltonBase(int j) {
  if (j < 0 || j >= kMaxHaltonDimension) {
    Fail(ErrorKind::kCapacity, "Halton dimension " + std::to_string(j + 1) +
                                   " exceeds the prime table (" +
                                   std::to_string(kMaxHaltonDimension) + ")");
  }
  return kPrimes[j];
}

double RadicalInverse(uint64_t index, uint32_t base) {
  const double inv_base = 1.0 / base;
  double factor = inv_base;
  double value = 0.0;
  while (index > 0) {
    value += static_cast<double>(index % base) * factor;
    index /= base;
    factor *= inv_base;
  }
  return value;
}

std::vector<double> HaltonPoint(uint64_t index, int dim) {
  if (index == 0) {
    Fail(ErrorKind::kInvalidArgument, "Halton index starts at 1");
  }
  if (dim > kMaxHaltonDimension) HaltonBase(dim - 1);  // throws
  std::vector<double> point(dim);
  for (int j = 0; j < dim; ++j) point[j] = RadicalInverse(index, kPrimes[j]);
  return point;
}

}  // namespace pg2
