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

#ifndef PG2_ERROR_H_
#define PG2_ERROR_H_

#include <stdexcept>
#include <string>

namespace pg2 {

// Broad failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
  kInvalidArgument,  // Caller passed something malformed (usage).
  kFormat,           // A file did not parse under its declared format.
  kValidation,       // Parsed fine but violates a model/data invariant.
  kNumericDomain,    // Input outside a function's mathematical domain.
  kCapacity,         // A fixed table or enumeration guard was exceeded.
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace pg2

#endif  // PG2_ERROR_H_
