// Copyright 2026 The multifault Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace multifault {

// Root of every error thrown by the library. Callers that only need to
// distinguish "domain" from "environment" failures can catch the two
// intermediate classes below.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The input data is wrong or contradicts itself: bad manifest, relation
// referencing unknown faults, baseline runs that do not reproduce a fault.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The outside world failed: file system, subprocesses, checkouts.
class EnvironmentError : public Error {
 public:
  using Error::Error;
};

class ManifestError : public DomainError {
 public:
  using DomainError::DomainError;
};

class LookupError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ConsistencyError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A fault's own tests do not fail on its faulty version or do not pass on
// its fixed version.
class BaselineError : public DomainError {
 public:
  using DomainError::DomainError;
};

class CheckoutFailed : public EnvironmentError {
 public:
  CheckoutFailed(const std::string& what, std::string output)
      : EnvironmentError(what), output_(std::move(output)) {}
  const std::string& output() const noexcept { return output_; }

 private:
  std::string output_;
};

}  // namespace multifault
