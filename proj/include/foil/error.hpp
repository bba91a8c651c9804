// Copyright 2026 The foil-pinn Authors
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

namespace foil {

/// Base of all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed user input (codes, flags, files). Maps to CLI exit code 1.
class ValidationError : public Error {
public:
    using Error::Error;
};

class ParseError : public ValidationError {
public:
    ParseError(std::string field, const std::string& what)
        : ValidationError(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

class DomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class LoadError : public ValidationError {
public:
    LoadError(const std::string& what, long row = -1)
        : ValidationError(row >= 0 ? "row " + std::to_string(row) + ": " + what : what),
          row_(row) {}
    long row() const { return row_; }

private:
    long row_;
};

/// Precondition of an operation violated by the caller.
class ContractError : public Error {
public:
    using Error::Error;
};

class SamplingError : public Error {
public:
    using Error::Error;
};

/// Non-finite or divergent numerics. Maps to CLI exit code 2.
class NumericError : public Error {
public:
    NumericError(const std::string& what, int layer = -1)
        : Error(layer >= 0 ? what + " (layer " + std::to_string(layer) + ")" : what),
          layer_(layer) {}
    int layer() const { return layer_; }

private:
    int layer_;
};

}  // namespace foil
