// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace degenkit {

enum class ErrorKind {
  contract,      // caller broke a documented precondition
  validation,    // malformed or inconsistent input data
  budget,        // enumeration node budget exhausted
  missing_keys,  // invariant table lacks required entries
  scale,         // instance too large for brute force
  infeasible,    // instance has no meaning (e.g. negative branch count)
  unsupported,   // input outside the supported model
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ContractViolation : public Error {
 public:
  explicit ContractViolation(const std::string& what)
      : Error(ErrorKind::contract, what) {}
};

/// Validation failure; `path` is a JSON-pointer-like location when the
/// failure comes from a document, empty otherwise.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what, std::string path = {})
      : Error(ErrorKind::validation,
              path.empty() ? what : path + ": " + what),
        path_(std::move(path)),
        message_(what) {}
  const std::string& path() const noexcept { return path_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string path_;
  std::string message_;
};

class MissingKeysError : public Error {
 public:
  explicit MissingKeysError(std::vector<std::string> keys)
      : Error(ErrorKind::missing_keys,
              std::to_string(keys.size()) + " invariant table key(s) missing"),
        keys_(std::move(keys)) {}
  const std::vector<std::string>& keys() const noexcept { return keys_; }

 private:
  std::vector<std::string> keys_;
};

class ScaleError : public Error {
 public:
  explicit ScaleError(const std::string& what) : Error(ErrorKind::scale, what) {}
};

class InfeasibleInstance : public Error {
 public:
  explicit InfeasibleInstance(const std::string& what)
      : Error(ErrorKind::infeasible, what) {}
};

class UnsupportedInput : public Error {
 public:
  explicit UnsupportedInput(const std::string& what)
      : Error(ErrorKind::unsupported, what) {}
};

}  // namespace degenkit
