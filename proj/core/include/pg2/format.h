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

#ifndef PG2_FORMAT_H_
#define PG2_FORMAT_H_

#include <string>

namespace pg2 {

// Fixed-point text with 9 significant digits; zero prints as "0.000000000".
std::string FormatReal(double value);

// `value` rounded to 9 significant digits, for stable machine-readable output.
double RoundSignificant(double value);

}  // namespace pg2

#endif  // PG2_FORMAT_H_
