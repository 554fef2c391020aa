// Copyright maskverif contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "maskverif/oracle.hpp"

#include <algorithm>
#include <bit>

#include "maskverif/error.hpp"

namespace maskverif {

namespace {

constexpr std::uint64_t kLowPatterns[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

} // namespace

TruthTable::TruthTable(std::size_t n_inputs)
    : n_(n_inputs), words_(std::max<std::size_t>(1, length() / 64), 0) {}

void TruthTable::set(std::size_t x, bool v) {
  std::uint64_t bit = std::uint64_t{1} << (x & 63);
  if (v)
    words_[x >> 6] |= bit;
  else
    words_[x >> 6] &= ~bit;
}

std::uint64_t TruthTable::tail_mask() const {
  return n_ >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << length()) - 1;
}

bool TruthTable::is_constant() const {
  std::uint64_t first = words_[0] & 1 ? tail_mask() : 0;
  for (std::uint64_t w : words_)
    if ((w & tail_mask()) != first)
      return false;
  return true;
}

std::vector<TruthTable> simulate_all(const Circuit &c) {
  const std::size_t n = c.inputs().size();
  if (n > kMaxOracleInputs)
    throw Error(ErrorKind::TooManyInputs,
                "exhaustive simulation needs at most " +
                    std::to_string(kMaxOracleInputs) + " inputs, circuit has " +
                    std::to_string(n));
  std::vector<TruthTable> t(c.size(), TruthTable(n));
  const std::uint64_t tail = t.empty() ? 0 : TruthTable(n).tail_mask();
  for (NetId id : topo_order(c)) {
    const Node &node = c.node(id);
    auto &out = t[id].words();
    auto in = [&](std::size_t k) -> const std::vector<std::uint64_t> & {
      return t[node.operands[k]].words();
    };
    for (std::size_t w = 0; w < out.size(); ++w) {
      std::uint64_t v = 0;
      switch (node.kind) {
      case GateKind::Input: {
        std::size_t k = *c.input_position(id);
        v = k < 6 ? kLowPatterns[k]
                  : ((w >> (k - 6)) & 1 ? ~std::uint64_t{0} : 0);
        break;
      }
      case GateKind::Const0: v = 0; break;
      case GateKind::Const1: v = ~std::uint64_t{0}; break;
      case GateKind::Buf:
      case GateKind::Reg: v = in(0)[w]; break;
      case GateKind::Not: v = ~in(0)[w]; break;
      case GateKind::And: v = in(0)[w] & in(1)[w]; break;
      case GateKind::Nand: v = ~(in(0)[w] & in(1)[w]); break;
      case GateKind::Or: v = in(0)[w] | in(1)[w]; break;
      case GateKind::Nor: v = ~(in(0)[w] | in(1)[w]); break;
      case GateKind::Xor: v = in(0)[w] ^ in(1)[w]; break;
      case GateKind::Xnor: v = ~(in(0)[w] ^ in(1)[w]); break;
      case GateKind::Mux:
        v = (in(0)[w] & ~in(2)[w]) | (in(1)[w] & in(2)[w]);
        break;
      }
      out[w] = v & tail;
    }
  }
  return t;
}

std::vector<std::int32_t> walsh_spectrum(const TruthTable &t) {
  const std::size_t len = t.length();
  std::vector<std::int32_t> f(len);
  for (std::size_t x = 0; x < len; ++x)
    f[x] = t.get(x) ? -1 : 1;
  for (std::size_t h = 1; h < len; h <<= 1)
    for (std::size_t i = 0; i < len; i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) {
        std::int32_t a = f[j], b = f[j + h];
        f[j] = a + b;
        f[j + h] = a - b;
      }
  return f;
}

CorrelationSet fourier_support(const TruthTable &t, const Circuit &c,
                               const InputLabeling &l) {
  std::vector<Monomial> base;
  for (NetId in : c.inputs())
    base.push_back(l.base_monomial(c.name(in)));
  auto spec = walsh_spectrum(t);
  std::vector<Monomial> out;
  for (std::size_t T = 0; T < spec.size(); ++T) {
    if (spec[T] == 0)
      continue;
    Monomial m = kPhi;
    for (std::size_t rest = T; rest; rest &= rest - 1)
      m = mono_mul(m, base[static_cast<std::size_t>(std::countr_zero(rest))]);
    out.push_back(m);
  }
  return CorrelationSet(std::move(out));
}

std::vector<NetId> probe_cone(const Circuit &c, NetId probe) {
  std::vector<char> seen(c.size(), 0);
  std::vector<NetId> stack{probe}, out;
  seen[probe] = 1;
  while (!stack.empty()) {
    NetId n = stack.back();
    stack.pop_back();
    out.push_back(n);
    if (c.node(n).kind == GateKind::Reg)
      continue; // synchronization point
    for (NetId op : c.node(n).operands)
      if (!seen[op]) {
        seen[op] = 1;
        stack.push_back(op);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Oracle::Oracle(const Circuit &c, const InputLabeling &l)
    : c_(c), l_(l), tables_(simulate_all(c)) {
  const VarTable &vars = l.vars();
  std::vector<Monomial> base;
  Monomial used = 0;
  for (NetId in : c.inputs()) {
    base.push_back(l.base_monomial(c.name(in)));
    used |= base.back();
  }
  // Enumeration bit layout: masks lowest, then secrets, then publics.
  std::vector<std::size_t> masks, secrets, publics;
  for (std::size_t b = 0; b < vars.size(); ++b) {
    if (!(used >> b & 1))
      continue;
    switch (vars.var(b).kind) {
    case VarKind::Mask: masks.push_back(b); break;
    case VarKind::Secret: secrets.push_back(b); break;
    case VarKind::Public: publics.push_back(b); break;
    }
  }
  n_mask_ = masks.size();
  n_secret_ = secrets.size();
  n_public_ = publics.size();
  std::vector<std::size_t> order = masks;
  order.insert(order.end(), secrets.begin(), secrets.end());
  order.insert(order.end(), publics.begin(), publics.end());
  if (order.size() > kMaxOracleInputs)
    throw Error(ErrorKind::TooManyInputs,
                "oracle enumeration needs at most " +
                    std::to_string(kMaxOracleInputs) + " base variables, got " +
                    std::to_string(order.size()));
  std::vector<std::uint32_t> contrib(order.size(), 0);
  for (std::size_t e = 0; e < order.size(); ++e)
    for (std::size_t k = 0; k < base.size(); ++k)
      if (base[k] >> order[e] & 1)
        contrib[e] |= std::uint32_t{1} << k;
  assignment_.assign(std::size_t{1} << order.size(), 0);
  for (std::size_t idx = 1; idx < assignment_.size(); ++idx)
    assignment_[idx] =
        assignment_[idx & (idx - 1)] ^
        contrib[static_cast<std::size_t>(std::countr_zero(idx))];
}

bool Oracle::depends_on_secret(const std::vector<NetId> &observed) const {
  if (n_secret_ == 0 || observed.empty())
    return false;
  if (observed.size() > 64)
    throw Error(ErrorKind::TooManyInputs,
                "probe observes more than 64 values at once");
  const std::size_t n_m = std::size_t{1} << n_mask_;
  const std::size_t n_s = std::size_t{1} << n_secret_;
  const std::size_t n_p = std::size_t{1} << n_public_;
  std::vector<const TruthTable *> tabs;
  for (NetId id : observed)
    tabs.push_back(&tables_[id]);
  auto key = [&](std::size_t idx) {
    std::uint32_t x = assignment_[idx];
    std::uint64_t k = 0;
    for (std::size_t j = 0; j < tabs.size(); ++j)
      k |= std::uint64_t{tabs[j]->get(x)} << j;
    return k;
  };
  if (tabs.size() == 1) {
    for (std::size_t p = 0; p < n_p; ++p) {
      std::size_t ref = 0;
      for (std::size_t s = 0; s < n_s; ++s) {
        std::size_t base = (p * n_s + s) * n_m, ones = 0;
        for (std::size_t m = 0; m < n_m; ++m)
          ones += key(base + m);
        if (s == 0)
          ref = ones;
        else if (ones != ref)
          return true;
      }
    }
    return false;
  }
  std::vector<std::uint64_t> ref(n_m), cur(n_m);
  for (std::size_t p = 0; p < n_p; ++p)
    for (std::size_t s = 0; s < n_s; ++s) {
      auto &dst = s == 0 ? ref : cur;
      std::size_t base = (p * n_s + s) * n_m;
      for (std::size_t m = 0; m < n_m; ++m)
        dst[m] = key(base + m);
      std::sort(dst.begin(), dst.end());
      if (s != 0 && cur != ref)
        return true;
    }
  return false;
}

bool Oracle::stable_leak(NetId net) const { return depends_on_secret({net}); }

bool Oracle::transient_leak(NetId net) const {
  std::vector<NetId> leaves;
  for (NetId n : probe_cone(c_, net)) {
    GateKind k = c_.node(n).kind;
    if (k == GateKind::Input || k == GateKind::Reg)
      leaves.push_back(n);
  }
  auto it = cache_.find(leaves);
  if (it != cache_.end())
    return it->second;
  bool r = depends_on_secret(leaves);
  cache_.emplace(std::move(leaves), r);
  return r;
}

CorrelationSet Oracle::support(NetId net) const {
  return fourier_support(tables_[net], c_, l_);
}

Verdict Oracle::run(Model m, bool include_inputs) const {
  Verdict v;
  v.model = m;
  v.order = 1;
  for (NetId id : topo_order(c_)) {
    if (!include_inputs && c_.node(id).kind == GateKind::Input)
      continue;
    ++v.assertions;
    if (leak(m, id))
      v.leaks.push_back({id, std::nullopt, kPhi});
  }
  v.secure = v.leaks.empty();
  return v;
}

Verdict oracle_stable(const Circuit &c, const InputLabeling &l) {
  return Oracle(c, l).run(Model::Stable);
}

Verdict oracle_transient(const Circuit &c, const InputLabeling &l) {
  return Oracle(c, l).run(Model::Transient);
}

} // namespace maskverif
