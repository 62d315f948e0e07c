// Copyright 2026 The Authors.
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

#ifndef HCA_ERRORS_HPP_
#define HCA_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace hca {

// Caller violated a documented precondition (wrong bid shape, bad grouping).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An allocation refers to bidders, atoms or sellers that do not exist.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A problem exceeds a solver's size guard.
class SizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A pricing rule was paired with a solver it is not defined for.
class PolicyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Invalid physical-model arguments (non-positive SNR, zero antennas).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed scenario or experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hca

#endif  // HCA_ERRORS_HPP_
