// Copyright maskverif contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace maskverif {

enum class ErrorKind {
  Syntax,
  DuplicateNet,
  UndeclaredOperand,
  ArityMismatch,
  Cycle,
  UnknownNet,
  MissingLabel,
  DuplicateLabel,
  DuplicateShare,
  MissingShare,
  Schema,
  StateUnknown,
  OrderingViolation,
  StructureNotFound,
  ResourceCap,
  TooManyInputs,
  Usage,
};

const char *to_string(ErrorKind kind);

/// Every failure raised by the library. `kind()` lets callers map errors
/// onto exit codes without parsing messages.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace maskverif
