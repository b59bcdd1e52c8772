// Copyright 2026 The secnc Authors
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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace secnc {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated: bad dimensions, out-of-range indices, empty input.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotFullRowRank : public Error {
 public:
  using Error::Error;
};

class FieldTooSmall : public Error {
 public:
  using Error::Error;
};

// Some destination is connected to fewer relays than the wiretap budget.
class SecureCommunicationImpossible : public Error {
 public:
  SecureCommunicationImpossible(std::size_t destination, std::size_t cut,
                                std::size_t budget)
      : Error("destination " + std::to_string(destination + 1) +
              " has min-cut " + std::to_string(cut) +
              " below wiretap budget " + std::to_string(budget) +
              "; secure communication is not possible"),
        destination_(destination) {}

  std::size_t destination() const { return destination_; }

 private:
  std::size_t destination_;
};

// A requested rate tuple lies outside the achievable region. `witness` is the
// destination subset (bitmask) whose sum constraint is violated.
class InfeasibleRates : public Error {
 public:
  InfeasibleRates(std::uint32_t witness, long long bound, long long requested,
                  const std::string& what)
      : Error(what), witness_(witness), bound_(bound), requested_(requested) {}

  std::uint32_t witness() const { return witness_; }
  long long bound() const { return bound_; }
  long long requested() const { return requested_; }

 private:
  std::uint32_t witness_;
  long long bound_;
  long long requested_;
};

class NotSeparable : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(double required, std::uint64_t budget)
      : Error("exhaustive enumeration needs " + format_count(required) +
              " outcomes, budget is " + std::to_string(budget)),
        required_(required),
        budget_(budget) {}

  double required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  static std::string format_count(double v) {
    if (v < 1e18) return std::to_string(static_cast<std::uint64_t>(v));
    return std::to_string(v);
  }

  double required_;
  std::uint64_t budget_;
};

class MulticastFailure : public Error {
 public:
  MulticastFailure(std::size_t attempts, const std::string& what)
      : Error(what), attempts_(attempts) {}

  std::size_t attempts() const { return attempts_; }

 private:
  std::size_t attempts_;
};

class LiftFailure : public Error {
 public:
  LiftFailure(std::size_t attempts, std::string condition)
      : Error("lift failed after " + std::to_string(attempts) +
              " attempts; last failing condition: " + condition),
        attempts_(attempts),
        condition_(std::move(condition)) {}

  std::size_t attempts() const { return attempts_; }
  const std::string& condition() const { return condition_; }

 private:
  std::size_t attempts_;
  std::string condition_;
};

// Malformed input file. `field` names the offending JSON path.
class ParseError : public Error {
 public:
  ParseError(const std::string& field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(field) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace secnc
