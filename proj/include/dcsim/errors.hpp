// Copyright 2026 The dcsim Authors
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

namespace dcsim {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Amplitudes (or a density matrix trace) are off unit norm beyond tolerance.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Duplicate, colliding or mismatched basis labels.
class BasisError : public Error {
 public:
  using Error::Error;
};

/// A mode was referenced that the state does not carry.
class UnknownModeError : public Error {
 public:
  using Error::Error;
};

/// A parameter lies outside its physical domain (e.g. transmissivity > 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The idler marginal changed with Alice's setting. Raised by the event
/// engine before sampling; it means the model is broken, not the run.
class NoSignalingViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace dcsim
