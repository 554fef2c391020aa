// Copyright maskverif contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "maskverif/labels.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "maskverif/error.hpp"

namespace maskverif {

std::string_view to_string(Model m) {
  return m == Model::Stable ? "stable" : "transient";
}

std::size_t default_cap() {
  constexpr std::size_t kDefault = std::size_t{1} << 20;
  const char *env = std::getenv("MASKVERIF_CAP");
  if (!env || !*env)
    return kDefault;
  char *end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0)
    throw Error(ErrorKind::Usage,
                std::string("MASKVERIF_CAP must be a positive integer, got '") +
                    env + "'");
  return static_cast<std::size_t>(v);
}

namespace {

CorrelationSet capped(const CorrelationSet &a, const CorrelationSet &b,
                      bool augment, std::size_t cap, const std::string &net) {
  try {
    return set_product(a, b, augment, cap);
  } catch (const CapExceeded &) {
    throw Error(ErrorKind::ResourceCap, "label set of net '" + net +
                                            "' exceeds cap of " +
                                            std::to_string(cap) + " monomials");
  }
}

bool is_linear(GateKind k) { return k == GateKind::Xor || k == GateKind::Xnor; }

} // namespace

LabelMap propagate(const Circuit &c, const InputLabeling &l,
                   bool with_transient, std::size_t cap) {
  LabelMap out;
  out.stable.resize(c.size());
  if (with_transient)
    out.transient.resize(c.size());
  for (NetId id : topo_order(c)) {
    const Node &n = c.node(id);
    auto op = [&](std::size_t i) { return n.operands[i]; };
    CorrelationSet s, t;
    switch (n.kind) {
    case GateKind::Input:
      s = t = l.base_set(n.name);
      break;
    case GateKind::Const0:
    case GateKind::Const1:
      s = t = CorrelationSet{kPhi};
      break;
    case GateKind::Buf:
    case GateKind::Not:
      s = out.stable[op(0)];
      if (with_transient)
        t = out.transient[op(0)];
      break;
    case GateKind::Reg:
      s = out.stable[op(0)];
      t = s;
      break;
    case GateKind::Mux:
      throw Error(ErrorKind::Schema,
                  "MUX '" + n.name + "' must be lowered before propagation");
    default:
      s = capped(out.stable[op(0)], out.stable[op(1)], !is_linear(n.kind), cap,
                 n.name);
      if (with_transient)
        t = capped(out.transient[op(0)], out.transient[op(1)], true, cap,
                   n.name);
      break;
    }
    if (s.size() > cap)
      throw Error(ErrorKind::ResourceCap, "label set of net '" + n.name +
                                              "' exceeds cap of " +
                                              std::to_string(cap) +
                                              " monomials");
    if (with_transient) {
      if (!s.subset_of(t))
        throw std::logic_error("stable label not contained in transient label at " +
                               n.name);
      out.transient[id] = std::move(t);
    }
    out.stable[id] = std::move(s);
  }
  return out;
}

Verdict verify_labels(const Circuit &c, const LabelMap &labels,
                      const VarTable &vars, Model model, int d,
                      std::size_t cap) {
  if (d != 1 && d != 2)
    throw Error(ErrorKind::Usage,
                "security order must be 1 or 2, got " + std::to_string(d));
  if (model == Model::Transient && labels.transient.empty())
    throw Error(ErrorKind::Usage, "transient labels were not propagated");
  Verdict v;
  v.model = model;
  v.order = d;
  std::vector<NetId> probes;
  for (NetId id : topo_order(c))
    if (c.node(id).kind != GateKind::Input)
      probes.push_back(id);
  for (NetId id : probes) {
    ++v.assertions;
    for (Monomial m : check_leak(labels.of(model, id), vars))
      v.leaks.push_back({id, std::nullopt, m});
  }
  if (d == 2) {
    for (std::size_t i = 0; i < probes.size(); ++i)
      for (std::size_t j = i + 1; j < probes.size(); ++j) {
        ++v.assertions;
        auto joint = capped(labels.of(model, probes[i]),
                            labels.of(model, probes[j]), true, cap,
                            c.name(probes[i]) + "," + c.name(probes[j]));
        for (Monomial m : check_leak(joint, vars))
          v.leaks.push_back({probes[i], probes[j], m});
      }
    std::vector<std::size_t> pos(c.size());
    for (std::size_t i = 0; i < probes.size(); ++i)
      pos[probes[i]] = i + 1;
    auto key = [&](const Leak &k) {
      return std::pair(pos[k.net], k.partner ? pos[*k.partner] : 0);
    };
    std::stable_sort(v.leaks.begin(), v.leaks.end(),
                     [&](const Leak &a, const Leak &b) { return key(a) < key(b); });
  }
  v.secure = v.leaks.empty();
  return v;
}

Verdict verify(const Circuit &c, const InputLabeling &l, Model model, int d,
               std::size_t cap) {
  if (d != 1 && d != 2)
    throw Error(ErrorKind::Usage,
                "security order must be 1 or 2, got " + std::to_string(d));
  LabelMap labels = propagate(c, l, model == Model::Transient, cap);
  return verify_labels(c, labels, l.vars(), model, d, cap);
}

} // namespace maskverif
