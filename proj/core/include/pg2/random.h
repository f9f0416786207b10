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

#ifndef PG2_RANDOM_H_
#define PG2_RANDOM_H_

#include <cstdint>
#include <random>

namespace pg2 {

// The engine's output sequence is fixed by the standard, so every draw made
// through the helpers below is reproducible across standard libraries.
using Rng = std::mt19937_64;

// One step of the SplitMix64 generator; advances `state`.
uint64_t SplitMix64(uint64_t& state);

// Seed for an independent stream `stream` derived from a base seed. Used to
// give every query / worker its own generator without shared state.
uint64_t DeriveSeed(uint64_t seed, uint64_t stream);

// Uniform double strictly inside (0, 1), with 53 random bits.
double UniformOpen01(Rng& rng);

// Uniform integer in [0, n). n must be positive.
uint64_t UniformIndex(Rng& rng, uint64_t n);

}  // namespace pg2

#endif  // PG2_RANDOM_H_
