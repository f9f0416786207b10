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

#ifndef PG2_PARALLEL_H_
#define PG2_PARALLEL_H_

#include <functional>

namespace pg2 {

// Worker count used when a caller asks for 0 threads.
int DefaultThreadCount();

// Calls fn(i) for every i in [0, n) on up to `threads` workers (0 means
// DefaultThreadCount()). Callers write results into per-index slots, so the
// outcome never depends on scheduling. The first exception thrown by any
// call is rethrown after all workers stop.
void ParallelFor(int n, int threads, const std::function<void(int)>& fn);

}  // namespace pg2

#endif  // PG2_PARALLEL_H_
