// Copyright 2026 The su4c Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace su4c {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonUnitaryError : public Error {
 public:
  using Error::Error;
};

class NotSymmetricError : public Error {
 public:
  using Error::Error;
};

class DeterminantError : public Error {
 public:
  using Error::Error;
};

/// A 4×4 matrix that is not a tensor product of two 2×2 factors.
class NotAProductError : public Error {
 public:
  using Error::Error;
};

/// Magic-basis orthogonal factors came out complex; eigenvector pairing went wrong.
class RealityViolationError : public Error {
 public:
  using Error::Error;
};

class InvalidDensityMatrixError : public Error {
 public:
  using Error::Error;
};

class TomographyInputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace su4c
