// Copyright maskverif contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace maskverif {

enum class VarKind : std::uint8_t { Secret, Mask, Public };

struct BaseVar {
  VarKind kind;
  std::string id;

  auto operator<=>(const BaseVar &) const = default;
  bool operator==(const BaseVar &) const = default;
};

/// A set of base variables packed as a bitmask over a VarTable. Bit i stands
/// for the i-th variable of the table. 0 is the constant term.
using Monomial = std::uint64_t;

inline constexpr Monomial kPhi = 0;

/// Product in the +-1 domain: x*x = 1, so shared variables cancel.
constexpr Monomial mono_mul(Monomial a, Monomial b) { return a ^ b; }

/// Ordered variable universe. Sorting by (kind, id) makes bit order equal the
/// canonical BaseVar order.
class VarTable {
public:
  static constexpr std::size_t kMaxVars = 64;

  VarTable() = default;
  /// Throws Error(ResourceCap) above kMaxVars variables.
  explicit VarTable(std::vector<BaseVar> vars);

  std::size_t size() const { return vars_.size(); }
  const BaseVar &var(std::size_t bit) const { return vars_.at(bit); }
  const std::vector<BaseVar> &vars() const { return vars_; }

  /// Throws Error(UnknownNet) for variables outside the table.
  Monomial bit(const BaseVar &v) const;
  Monomial monomial(std::initializer_list<BaseVar> vs) const;
  Monomial monomial(const std::vector<BaseVar> &vs) const;

  Monomial secret_bits() const { return secret_; }
  Monomial mask_bits() const { return mask_; }

  std::vector<BaseVar> expand(Monomial m) const;
  /// "{s:1,m:1#1}" style, "{}" for the constant term.
  std::string format(Monomial m) const;
  /// Kind-prefixed tokens, e.g. {"s:1", "m:m1"}.
  std::vector<std::string> tokens(Monomial m) const;

  bool operator==(const VarTable &o) const { return vars_ == o.vars_; }

private:
  std::vector<BaseVar> vars_;
  Monomial secret_ = 0;
  Monomial mask_ = 0;
};

/// Canonical set of monomials (sorted, duplicate free).
class CorrelationSet {
public:
  CorrelationSet() = default;
  CorrelationSet(std::initializer_list<Monomial> ms);
  explicit CorrelationSet(std::vector<Monomial> ms);

  const std::vector<Monomial> &monomials() const { return ms_; }
  std::size_t size() const { return ms_.size(); }
  bool empty() const { return ms_.empty(); }
  bool contains(Monomial m) const;
  bool subset_of(const CorrelationSet &o) const;
  auto begin() const { return ms_.begin(); }
  auto end() const { return ms_.end(); }

  bool operator==(const CorrelationSet &) const = default;

private:
  std::vector<Monomial> ms_;
};

/// Thrown internally when a product would exceed its size cap.
struct CapExceeded {
  std::size_t cap;
};

/// Pairwise product. With `augment`, each side is first unioned with {phi}.
/// Throws CapExceeded if the result would hold more than `cap` monomials.
CorrelationSet set_product(const CorrelationSet &a, const CorrelationSet &b,
                           bool augment,
                           std::size_t cap = static_cast<std::size_t>(-1));

/// Monomials with at least one secret and no mask.
std::vector<Monomial> check_leak(const CorrelationSet &s, const VarTable &vars);

inline bool is_leaky(Monomial m, const VarTable &vars) {
  return (m & vars.secret_bits()) != 0 && (m & vars.mask_bits()) == 0;
}

} // namespace maskverif
