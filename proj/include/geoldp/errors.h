// Copyright 2026 The geoldp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GEOLDP_ERRORS_H_
#define GEOLDP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace geoldp {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter lies outside its admissible range (epsilon <= 0, n = 0,
// k < 2, an out-of-range value, ...).
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// Operands live on domains of different sizes.
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

// A matrix that had to be inverted is (numerically) singular.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// A Bayesian update hit a reported value with positive empirical mass but
// zero predicted mass.
class ZeroDenominatorError : public Error {
 public:
  using Error::Error;
};

}  // namespace geoldp

#endif  // GEOLDP_ERRORS_H_
