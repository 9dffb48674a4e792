// Copyright 2026 The ddf Authors
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

namespace ddf {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied inconsistent or out-of-range arguments.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class IndexOutOfRange : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// A labeling task has no samples in one of its classes.
class EmptyClass : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class ZeroDirection : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class EmptyPairs : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class InvalidCorrelation : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Numerical failures. The CLI maps these to exit code 2.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class SingularWithin : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularSystem : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonFinite : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class LineSearchFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public IoError {
 public:
  using IoError::IoError;
};

}  // namespace ddf
