// Copyright maskverif contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maskverif/algebra.hpp"
#include "maskverif/circuit.hpp"

namespace maskverif {

enum class RoleKind : std::uint8_t { Share, Mask, Public };

struct Role {
  RoleKind kind = RoleKind::Public;
  std::string secret; // Share only
  int share = 0;      // Share only, 1-based

  static Role make_share(std::string secret, int index) {
    return {RoleKind::Share, std::move(secret), index};
  }
  static Role mask() { return {RoleKind::Mask, {}, 0}; }
  static Role pub() { return {RoleKind::Public, {}, 0}; }

  bool operator==(const Role &) const = default;
};

/// Input roles keyed by net name, plus the derived base monomial of each input.
///
/// Share encoding for secret i with n shares: share 1 carries
/// {secret i, m_{i,1..n-1}}, share j > 1 carries {m_{i,j-1}}. The implicit masks
/// are named "i#k" so they cannot clash with net names.
class InputLabeling {
public:
  InputLabeling() = default;

  /// Validates `roles` against `c`: every primary input labeled exactly once,
  /// share indices 1..n complete per secret.
  static InputLabeling create(const Circuit &c,
                              std::vector<std::pair<std::string, Role>> roles);

  /// Entries in the circuit's input order.
  const std::vector<std::pair<std::string, Role>> &entries() const {
    return entries_;
  }
  const Role *find(std::string_view net) const;
  /// Throws Error(MissingLabel).
  const Role &role(std::string_view net) const;
  Monomial base_monomial(std::string_view net) const;
  CorrelationSet base_set(std::string_view net) const {
    return CorrelationSet{base_monomial(net)};
  }
  const VarTable &vars() const { return *vars_; }
  int share_count(const std::string &secret) const;

  /// Keeps only the inputs of `sub`; the variable table and share encoding
  /// are unchanged so monomials stay comparable with the parent labeling.
  InputLabeling restrict_to(const Circuit &sub) const;

  /// Same labeling with the given inputs turned into public variables.
  InputLabeling with_public(const Circuit &c,
                            const std::vector<std::string> &nets) const;

  /// Label file text, one line per input in circuit order.
  std::string dump() const;

private:
  std::vector<std::pair<std::string, Role>> entries_;
  std::map<std::string, Monomial, std::less<>> base_;
  std::map<std::string, int> share_counts_;
  std::shared_ptr<const VarTable> vars_ = std::make_shared<VarTable>();
};

/// Format: one "<net>: share <k> of <secret>" | "<net>: mask" |
/// "<net>: public" per line; '#' starts a comment.
InputLabeling parse_labels(std::string_view text, const Circuit &c);

} // namespace maskverif
