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

#include "pg2/format.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <algorithm>
#include <string>

namespace pg2 {

namespace {
constexpr int kSignificantDigits = 9;
}  // namespace

std::string FormatReal(double value) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  // Digits after the decimal point so that 9 significant digits remain.
  int decimals = kSignificantDigits;
  if (value != 0.0) {
    // %.8e gives the exponent after rounding to 9 significant digits.
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.*e", kSignificantDigits - 1, value);
    const int exponent = std::atoi(std::strchr(buffer, 'e') + 1);
    decimals = std::max(0, kSignificantDigits - 1 - exponent);
  }
  char buffer[512];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
  std::string text(buffer);
  if (text == "-0.000000000") text.erase(0, 1);
  return text;
}

double RoundSignificant(double value) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.*e", kSignificantDigits - 1, value);
  return std::strtod(buffer, nullptr);
}

}  // namespace pg2
