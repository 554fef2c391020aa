// Copyright maskverif contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "maskverif/error.hpp"

namespace maskverif {

const char *to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::Syntax: return "syntax";
  case ErrorKind::DuplicateNet: return "duplicate-net";
  case ErrorKind::UndeclaredOperand: return "undeclared-operand";
  case ErrorKind::ArityMismatch: return "arity-mismatch";
  case ErrorKind::Cycle: return "cycle";
  case ErrorKind::UnknownNet: return "unknown-net";
  case ErrorKind::MissingLabel: return "missing-label";
  case ErrorKind::DuplicateLabel: return "duplicate-label";
  case ErrorKind::DuplicateShare: return "duplicate-share";
  case ErrorKind::MissingShare: return "missing-share";
  case ErrorKind::Schema: return "schema";
  case ErrorKind::StateUnknown: return "state-unknown";
  case ErrorKind::OrderingViolation: return "ordering-violation";
  case ErrorKind::StructureNotFound: return "structure-not-found";
  case ErrorKind::ResourceCap: return "resource-cap";
  case ErrorKind::TooManyInputs: return "too-many-inputs";
  case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

} // namespace maskverif
