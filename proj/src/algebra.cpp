// Copyright maskverif contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "maskverif/algebra.hpp"

#include <algorithm>
#include <unordered_set>

#include "maskverif/error.hpp"

namespace maskverif {

namespace {

char kind_prefix(VarKind k) {
  switch (k) {
  case VarKind::Secret:
    return 's';
  case VarKind::Mask:
    return 'm';
  case VarKind::Public:
    return 'p';
  }
  return '?';
}

void canonicalize(std::vector<Monomial> &v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

VarTable::VarTable(std::vector<BaseVar> vars) : vars_(std::move(vars)) {
  std::sort(vars_.begin(), vars_.end());
  vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
  if (vars_.size() > kMaxVars)
    throw Error(ErrorKind::ResourceCap,
                "too many base variables: " + std::to_string(vars_.size()) +
                    " (limit " + std::to_string(kMaxVars) + ")");
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].kind == VarKind::Secret)
      secret_ |= Monomial{1} << i;
    else if (vars_[i].kind == VarKind::Mask)
      mask_ |= Monomial{1} << i;
  }
}

Monomial VarTable::bit(const BaseVar &v) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || *it != v)
    throw Error(ErrorKind::UnknownNet, std::string("unknown base variable ") +
                                           kind_prefix(v.kind) + ":" + v.id);
  return Monomial{1} << (it - vars_.begin());
}

Monomial VarTable::monomial(std::initializer_list<BaseVar> vs) const {
  return monomial(std::vector<BaseVar>(vs));
}

Monomial VarTable::monomial(const std::vector<BaseVar> &vs) const {
  Monomial m = kPhi;
  for (const auto &v : vs)
    m = mono_mul(m, bit(v));
  return m;
}

std::vector<BaseVar> VarTable::expand(Monomial m) const {
  std::vector<BaseVar> out;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (m >> i & 1)
      out.push_back(vars_[i]);
  return out;
}

std::vector<std::string> VarTable::tokens(Monomial m) const {
  std::vector<std::string> out;
  for (const auto &v : expand(m))
    out.push_back(std::string(1, kind_prefix(v.kind)) + ":" + v.id);
  return out;
}

std::string VarTable::format(Monomial m) const {
  std::string s = "{";
  bool first = true;
  for (const auto &t : tokens(m)) {
    if (!first)
      s += ',';
    s += t;
    first = false;
  }
  return s + "}";
}

CorrelationSet::CorrelationSet(std::initializer_list<Monomial> ms)
    : ms_(ms) {
  canonicalize(ms_);
}

CorrelationSet::CorrelationSet(std::vector<Monomial> ms) : ms_(std::move(ms)) {
  canonicalize(ms_);
}

bool CorrelationSet::contains(Monomial m) const {
  return std::binary_search(ms_.begin(), ms_.end(), m);
}

bool CorrelationSet::subset_of(const CorrelationSet &o) const {
  return std::includes(o.ms_.begin(), o.ms_.end(), ms_.begin(), ms_.end());
}

CorrelationSet set_product(const CorrelationSet &a, const CorrelationSet &b,
                           bool augment, std::size_t cap) {
  std::vector<Monomial> av = a.monomials();
  std::vector<Monomial> bv = b.monomials();
  if (augment) {
    if (!a.contains(kPhi))
      av.insert(av.begin(), kPhi);
    if (!b.contains(kPhi))
      bv.insert(bv.begin(), kPhi);
  }
  const std::size_t bound = av.size() * bv.size();
  constexpr std::size_t kDenseLimit = std::size_t{1} << 24;
  if (bound <= kDenseLimit) {
    std::vector<Monomial> out;
    out.reserve(bound);
    for (Monomial x : av)
      for (Monomial y : bv)
        out.push_back(mono_mul(x, y));
    CorrelationSet r(std::move(out));
    if (r.size() > cap)
      throw CapExceeded{cap};
    return r;
  }
  // Too large to materialize blindly; dedupe as we go and bail at the cap.
  std::unordered_set<Monomial> acc;
  for (Monomial x : av)
    for (Monomial y : bv) {
      acc.insert(mono_mul(x, y));
      if (acc.size() > cap)
        throw CapExceeded{cap};
    }
  return CorrelationSet(std::vector<Monomial>(acc.begin(), acc.end()));
}

std::vector<Monomial> check_leak(const CorrelationSet &s, const VarTable &vars) {
  std::vector<Monomial> out;
  for (Monomial m : s)
    if (is_leaky(m, vars))
      out.push_back(m);
  return out;
}

} // namespace maskverif
