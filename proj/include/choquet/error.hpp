// Copyright 2026 The Choquet Authors.
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

namespace choquet {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Navigation below the finest level of the lattice.
class LevelOverflowError : public Error {
 public:
  using Error::Error;
};

class NegativityError : public Error {
 public:
  using Error::Error;
};

class NonIndicatorError : public Error {
 public:
  using Error::Error;
};

class EmptySetError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation (p <= 0, kinks, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class InvalidTilingError : public Error {
 public:
  using Error::Error;
};

class InadmissibleMeasureError : public Error {
 public:
  using Error::Error;
};

/// A construction needs more levels than the lattice provides.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

class UnknownSuiteError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace choquet
