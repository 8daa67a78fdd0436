// Copyright 2026 The dram Authors
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

#ifndef DRAM_ERRORS_HPP_
#define DRAM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace dram {

// Bad configuration or malformed input files. The CLI maps this family to
// exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Failures while computing on valid inputs (infeasible schedules, singular
// clearing systems, failed fits). The CLI maps this family, together with
// std::domain_error, to exit code 2.
class ComputationError : public std::runtime_error {
 public:
  explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

class InfeasibleScheduleError : public ComputationError {
 public:
  InfeasibleScheduleError(int slot, const std::string& what)
      : ComputationError(what), slot_(slot) {}
  // First slot at which no admissible temperature remains.
  int slot() const { return slot_; }

 private:
  int slot_;
};

class SingularSystemError : public ComputationError {
 public:
  explicit SingularSystemError(const std::string& what) : ComputationError(what) {}
};

class CalibrationError : public ComputationError {
 public:
  explicit CalibrationError(const std::string& what) : ComputationError(what) {}
};

}  // namespace dram

#endif  // DRAM_ERRORS_HPP_
