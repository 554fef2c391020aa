// Copyright maskverif contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "maskverif/fsm_split.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "maskverif/error.hpp"

namespace maskverif {

namespace {

bool is_op(GateKind k) {
  return k != GateKind::Input && k != GateKind::Const0 && k != GateKind::Const1;
}

struct Schedule {
  const Circuit &c;
  const FsmSchedule &fsm;
  std::vector<int> owner; // state index per node, -1 for inputs/constants

  explicit Schedule(const Circuit &circuit)
      : c(circuit), fsm(*circuit.fsm()), owner(circuit.size(), -1) {
    for (std::size_t s = 0; s < fsm.states.size(); ++s)
      for (NetId id : fsm.states[s].active)
        owner[id] = static_cast<int>(s);
  }

  /// Binding of `mux` as seen by an op running in state `cs`.
  std::optional<int> binding(NetId mux, std::size_t cs) const {
    if (auto v = fsm.states[cs].binding_for(mux))
      return v;
    if (owner[mux] >= 0)
      return fsm.states[static_cast<std::size_t>(owner[mux])].binding_for(mux);
    return std::nullopt;
  }

  bool folded(NetId id, std::size_t cs) const {
    return c.node(id).kind == GateKind::Mux && binding(id, cs).has_value();
  }

  void check_order(NetId producer, std::size_t cs, NetId consumer) const {
    if (owner[producer] > static_cast<int>(cs))
      throw Error(ErrorKind::OrderingViolation,
                  "net '" + c.name(consumer) + "' in state '" +
                      fsm.states[cs].name + "' depends on '" +
                      c.name(producer) + "' from later state '" +
                      fsm.states[static_cast<std::size_t>(owner[producer])].name +
                      "'");
  }

  /// Follows bound MUXes from operand `o` of an op running in state `cs`.
  NetId through(NetId o, std::size_t cs, NetId consumer) const {
    while (folded(o, cs)) {
      check_order(o, cs, consumer);
      o = c.node(o).operands[static_cast<std::size_t>(*binding(o, cs))];
    }
    check_order(o, cs, consumer);
    return o;
  }

  std::size_t state_of(NetId op) const {
    return static_cast<std::size_t>(owner[op]);
  }
};

std::size_t state_index(const Circuit &c, std::string_view state) {
  if (!c.fsm())
    throw Error(ErrorKind::StateUnknown,
                "circuit has no fsm, so state '" + std::string(state) +
                    "' does not exist");
  auto idx = c.fsm()->find(state);
  if (!idx)
    throw Error(ErrorKind::StateUnknown,
                "unknown state '" + std::string(state) + "'");
  return *idx;
}

std::vector<NetId> active_in(const Schedule &s, std::size_t k) {
  std::vector<NetId> out;
  for (NetId id : s.fsm.states[k].active)
    if (!s.folded(id, k))
      out.push_back(id);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NetId> closure_in(const Schedule &s, std::size_t k) {
  std::vector<NetId> start = active_in(s, k);
  for (NetId r : s.fsm.states[k].reg_writes) {
    s.check_order(r, k, r);
    start.push_back(r);
  }
  std::vector<char> in(s.c.size(), 0);
  std::vector<NetId> stack;
  for (NetId id : start)
    if (!in[id]) {
      in[id] = 1;
      stack.push_back(id);
    }
  while (!stack.empty()) {
    NetId n = stack.back();
    stack.pop_back();
    std::size_t cs = s.state_of(n);
    for (NetId o : s.c.node(n).operands) {
      NetId r = s.through(o, cs, n);
      if (is_op(s.c.node(r).kind) && !in[r]) {
        in[r] = 1;
        stack.push_back(r);
      }
    }
  }
  std::vector<NetId> out;
  for (NetId id = 0; id < s.c.size(); ++id)
    if (in[id])
      out.push_back(id);
  return out;
}

} // namespace

std::vector<NetId> active_ops(const Circuit &c, std::string_view state) {
  std::size_t k = state_index(c, state);
  return active_in(Schedule(c), k);
}

std::vector<NetId> dependency_closure(const Circuit &c, std::string_view state) {
  std::size_t k = state_index(c, state);
  return closure_in(Schedule(c), k);
}

SubDesign extract_subdesign(const Circuit &c, const InputLabeling &l,
                            std::string_view state) {
  std::size_t k = state_index(c, state);
  Schedule s(c);
  std::vector<NetId> ops = closure_in(s, k);

  std::vector<char> used(c.size(), 0);
  for (NetId id : ops)
    used[id] = 1;
  // Folded MUX copies: (mux, value) -> sub-design name, plus their operand.
  std::map<std::pair<NetId, int>, std::string> variant;
  std::vector<std::vector<std::pair<std::string, std::string>>> copies(c.size());
  std::map<std::string, NetId> origin_of;

  std::function<std::string(NetId, std::size_t)> ref =
      [&](NetId o, std::size_t cs) -> std::string {
    if (!s.folded(o, cs)) {
      used[o] = 1;
      return c.name(o);
    }
    int v = *s.binding(o, cs);
    auto key = std::pair(o, v);
    if (auto it = variant.find(key); it != variant.end())
      return it->second;
    std::string name = c.name(o);
    auto home = s.owner[o] >= 0
                    ? s.fsm.states[static_cast<std::size_t>(s.owner[o])]
                          .binding_for(o)
                    : std::nullopt;
    bool plain = home ? *home == v : copies[o].empty();
    if (!plain)
      name += "@" + s.fsm.states[cs].name;
    variant.emplace(key, name);
    std::string operand =
        ref(c.node(o).operands[static_cast<std::size_t>(v)], cs);
    copies[o].emplace_back(name, operand);
    origin_of.emplace(name, o);
    return name;
  };

  std::map<NetId, std::vector<std::string>> operands;
  for (NetId id : ops) {
    std::size_t cs = s.state_of(id);
    auto &names = operands[id];
    for (NetId o : c.node(id).operands)
      names.push_back(ref(o, cs));
  }

  SubDesign d;
  d.state = std::string(state);
  d.index = k;
  CircuitBuilder b;
  for (NetId id = 0; id < c.size(); ++id) {
    const Node &n = c.node(id);
    for (const auto &[name, operand] : copies[id])
      b.gate(name, GateKind::Buf, {operand});
    if (!used[id])
      continue;
    origin_of.emplace(n.name, id);
    if (n.kind == GateKind::Input)
      b.input(n.name);
    else if (!is_op(n.kind))
      b.gate(n.name, n.kind, {});
    else {
      b.gate(n.name, n.kind, operands[id]);
      if (n.kind == GateKind::Mux)
        d.unbound_muxes.push_back(id);
    }
  }
  std::vector<NetId> outs = s.fsm.states[k].reg_writes;
  for (NetId o : c.outputs())
    if (s.owner[o] == static_cast<int>(k) &&
        std::find(outs.begin(), outs.end(), o) == outs.end())
      outs.push_back(o);
  for (NetId o : outs)
    b.output(c.name(o));
  d.circuit = b.build();
  for (const Node &n : d.circuit.nodes())
    d.origin.push_back(origin_of.at(n.name));
  d.labeling = l.restrict_to(d.circuit);
  return d;
}

std::vector<SubDesign> split_all(const Circuit &c, const InputLabeling &l) {
  if (!c.fsm())
    throw Error(ErrorKind::StateUnknown, "circuit has no fsm to split");
  std::vector<SubDesign> out;
  for (const FsmState &st : c.fsm()->states)
    out.push_back(extract_subdesign(c, l, st.name));
  return out;
}

std::vector<NetId> reachable_ops(const Circuit &c) {
  std::vector<char> in(c.size(), 0);
  std::vector<NetId> stack;
  auto push = [&](NetId id) {
    if (!in[id]) {
      in[id] = 1;
      stack.push_back(id);
    }
  };
  for (NetId o : c.outputs())
    push(o);
  if (c.fsm())
    for (const FsmState &st : c.fsm()->states)
      for (NetId r : st.reg_writes)
        push(r);
  while (!stack.empty()) {
    NetId n = stack.back();
    stack.pop_back();
    for (NetId o : c.node(n).operands)
      push(o);
  }
  std::vector<NetId> out;
  for (NetId id = 0; id < c.size(); ++id)
    if (in[id] && is_op(c.node(id).kind))
      out.push_back(id);
  return out;
}

} // namespace maskverif
