// Copyright 2026 The nematic-spectral Authors
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
#include <vector>

namespace nematic {

class NematicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or violated precondition of a library call.
class InvalidArgument : public NematicError {
 public:
  using NematicError::NematicError;
};

/// Configuration file could not be parsed or failed schema/invariant checks.
/// The message always names the offending key.
class ConfigError : public NematicError {
 public:
  using NematicError::NematicError;
};

class IoError : public NematicError {
 public:
  using NematicError::NematicError;
};

/// Temperature dropped below the floor where the thermal potential is defined.
class TemperatureBelowFloor : public NematicError {
 public:
  using NematicError::NematicError;
};

/// Fixed-point iteration of a time step did not reach its tolerance.
class PicardFailure : public NematicError {
 public:
  PicardFailure(const std::string& what, std::vector<double> residuals)
      : NematicError(what), residuals_(std::move(residuals)) {}
  const std::vector<double>& residuals() const { return residuals_; }

 private:
  std::vector<double> residuals_;
};

}  // namespace nematic
