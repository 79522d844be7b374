// Copyright 2026 The ghzbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ghzbell {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Total qubit count exceeds kMaxQubits.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Operands disagree on qubit count or matrix side.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

class NotUnitaryError : public Error {
 public:
  using Error::Error;
};

/// A value violates a documented precondition (ranges, normalization, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A product observable lies in the zero-measure set where the Gamma/Theta
/// reductions are undefined.
class DegenerateDirectionError : public Error {
 public:
  using Error::Error;
};

/// Case-1 construction requested for an odd qubit count.
class ParityError : public Error {
 public:
  using Error::Error;
};

/// Case-5 primed phases do not sum to +-pi/2 (mod 2pi).
class PhaseSumError : public Error {
 public:
  using Error::Error;
};

class NotSaturatingError : public Error {
 public:
  using Error::Error;
};

/// Saturating configuration that fits none of the admissible Bloch-vector
/// patterns. Indicates a tolerance breach or a bug upstream.
class InconsistentConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical postcondition failed (e.g. complex expectation value).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ghzbell
