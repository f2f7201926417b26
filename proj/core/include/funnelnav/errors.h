/*
 * Copyright 2026 The funnelnav Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FUNNELNAV_ERRORS_H_
#define FUNNELNAV_ERRORS_H_

#include <stdexcept>
#include <string>

namespace funnelnav {

// Base of every error raised by the library. Runtime navigation outcomes
// (lost, timeout, collision) are trace events, never exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A spread statistic was requested on fewer than two matches or on a
// destination column set with zero standard deviation.
class DegenerateSpreadError : public Error {
 public:
  using Error::Error;
};

// A statistic or controller needing at least one match got none.
class EmptyMatchError : public Error {
 public:
  using Error::Error;
};

// Teach drive produced a frame with too few visible landmarks.
class TeachDegenerateError : public Error {
 public:
  using Error::Error;
};

// Visual path violates its structural invariants.
class InvalidPathError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent configuration / data file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace funnelnav

#endif  // FUNNELNAV_ERRORS_H_
