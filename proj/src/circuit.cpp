// Copyright maskverif contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "maskverif/circuit.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <queue>
#include <set>
#include <unordered_set>

#include "maskverif/error.hpp"

namespace maskverif {

namespace {

struct KindInfo {
  GateKind kind;
  std::string_view name;
  std::size_t arity;
};

constexpr std::array<KindInfo, 13> kKinds{{
    {GateKind::Input, "INPUT", 0},
    {GateKind::Const0, "CONST0", 0},
    {GateKind::Const1, "CONST1", 0},
    {GateKind::Buf, "BUF", 1},
    {GateKind::Not, "NOT", 1},
    {GateKind::And, "AND", 2},
    {GateKind::Nand, "NAND", 2},
    {GateKind::Or, "OR", 2},
    {GateKind::Nor, "NOR", 2},
    {GateKind::Xor, "XOR", 2},
    {GateKind::Xnor, "XNOR", 2},
    {GateKind::Mux, "MUX", 3},
    {GateKind::Reg, "REG", 1},
}};

std::string where(SourceLoc loc) {
  if (loc.line <= 0)
    return "";
  std::string s = "line " + std::to_string(loc.line);
  if (loc.column > 0)
    s += ", column " + std::to_string(loc.column);
  return s + ": ";
}

} // namespace

std::size_t arity(GateKind kind) {
  return kKinds[static_cast<std::size_t>(kind)].arity;
}

std::string_view to_string(GateKind kind) {
  return kKinds[static_cast<std::size_t>(kind)].name;
}

std::optional<GateKind> gate_kind_from_string(std::string_view name) {
  for (const auto &k : kKinds)
    if (k.name == name)
      return k.kind;
  return std::nullopt;
}

std::optional<int> FsmState::binding_for(NetId mux) const {
  for (const auto &b : mux_bindings)
    if (b.mux == mux)
      return b.value;
  return std::nullopt;
}

std::optional<std::size_t> FsmSchedule::find(std::string_view name) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i].name == name)
      return i;
  return std::nullopt;
}

std::optional<NetId> Circuit::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

NetId Circuit::at(std::string_view name) const {
  if (auto id = find(name))
    return *id;
  throw Error(ErrorKind::UnknownNet, "unknown net '" + std::string(name) + "'");
}

std::optional<std::size_t> Circuit::input_position(NetId id) const {
  auto it = std::find(inputs_.begin(), inputs_.end(), id);
  if (it == inputs_.end())
    return std::nullopt;
  return static_cast<std::size_t>(it - inputs_.begin());
}

bool Circuit::operator==(const Circuit &o) const {
  if (nodes_.size() != o.nodes_.size() || inputs_ != o.inputs_ ||
      outputs_ != o.outputs_ || fsm_.has_value() != o.fsm_.has_value())
    return false;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node &a = nodes_[i];
    const Node &b = o.nodes_[i];
    if (a.name != b.name || a.kind != b.kind || a.operands != b.operands)
      return false;
  }
  if (!fsm_)
    return true;
  const auto &sa = fsm_->states;
  const auto &sb = o.fsm_->states;
  if (sa.size() != sb.size())
    return false;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (sa[i].name != sb[i].name || sa[i].active != sb[i].active ||
        sa[i].reg_writes != sb[i].reg_writes ||
        sa[i].mux_bindings.size() != sb[i].mux_bindings.size())
      return false;
    for (std::size_t j = 0; j < sa[i].mux_bindings.size(); ++j)
      if (sa[i].mux_bindings[j].mux != sb[i].mux_bindings[j].mux ||
          sa[i].mux_bindings[j].value != sb[i].mux_bindings[j].value)
        return false;
  }
  return true;
}

CircuitBuilder &CircuitBuilder::input(std::string name, SourceLoc loc) {
  nodes_.push_back({std::move(name), GateKind::Input, {}, loc});
  return *this;
}

CircuitBuilder &CircuitBuilder::gate(std::string name, GateKind kind,
                                     std::vector<std::string> operands,
                                     SourceLoc loc) {
  nodes_.push_back({std::move(name), kind, std::move(operands), loc});
  return *this;
}

CircuitBuilder &CircuitBuilder::output(std::string name, SourceLoc loc) {
  outputs_.emplace_back(std::move(name), loc);
  return *this;
}

CircuitBuilder &CircuitBuilder::state(FsmStateSpec spec) {
  has_fsm_ = true;
  states_.push_back(std::move(spec));
  return *this;
}

CircuitBuilder &CircuitBuilder::enable_fsm() {
  has_fsm_ = true;
  return *this;
}

Circuit CircuitBuilder::build() const {
  Circuit c;
  c.nodes_.reserve(nodes_.size());
  for (const auto &p : nodes_) {
    if (!c.index_.emplace(p.name, c.nodes_.size()).second)
      throw Error(ErrorKind::DuplicateNet,
                  where(p.loc) + "duplicate net '" + p.name + "'");
    c.nodes_.push_back({p.name, p.kind, {}});
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto &p = nodes_[i];
    if (p.operands.size() != arity(p.kind))
      throw Error(ErrorKind::ArityMismatch,
                  where(p.loc) + std::string(to_string(p.kind)) + " '" +
                      p.name + "' expects " + std::to_string(arity(p.kind)) +
                      " operand(s), got " + std::to_string(p.operands.size()));
    for (const auto &op : p.operands) {
      auto it = c.index_.find(op);
      if (it == c.index_.end())
        throw Error(ErrorKind::UndeclaredOperand,
                    where(p.loc) + "net '" + p.name +
                        "' uses undeclared operand '" + op + "'");
      c.nodes_[i].operands.push_back(it->second);
    }
    if (p.kind == GateKind::Input)
      c.inputs_.push_back(i);
  }
  std::unordered_set<NetId> seen_out;
  for (const auto &[name, loc] : outputs_) {
    auto it = c.index_.find(name);
    if (it == c.index_.end())
      throw Error(ErrorKind::UndeclaredOperand,
                  where(loc) + "output '" + name + "' is not declared");
    if (!seen_out.insert(it->second).second)
      throw Error(ErrorKind::DuplicateNet,
                  where(loc) + "output '" + name + "' listed twice");
    c.outputs_.push_back(it->second);
  }
  topo_order(c); // throws on cycles

  if (!has_fsm_)
    return c;

  auto resolve = [&](const std::string &name, SourceLoc loc) {
    auto it = c.index_.find(name);
    if (it == c.index_.end())
      throw Error(ErrorKind::UnknownNet,
                  where(loc) + "fsm refers to unknown net '" + name + "'");
    return it->second;
  };
  FsmSchedule fsm;
  std::vector<int> owner(c.nodes_.size(), -1);
  for (const auto &spec : states_) {
    if (fsm.find(spec.name))
      throw Error(ErrorKind::DuplicateNet,
                  where(spec.loc) + "duplicate state '" + spec.name + "'");
    FsmState st;
    st.name = spec.name;
    for (const auto &n : spec.active) {
      NetId id = resolve(n, spec.loc);
      GateKind k = c.nodes_[id].kind;
      if (k == GateKind::Input || k == GateKind::Const0 ||
          k == GateKind::Const1)
        throw Error(ErrorKind::Schema, where(spec.loc) + "state '" +
                                           spec.name + "' lists " +
                                           std::string(to_string(k)) + " '" +
                                           n + "' as active");
      if (owner[id] >= 0)
        throw Error(ErrorKind::Schema,
                    where(spec.loc) + "net '" + n +
                        "' is active in more than one state");
      owner[id] = static_cast<int>(fsm.states.size());
      st.active.push_back(id);
    }
    for (const auto &n : spec.reg_writes) {
      NetId id = resolve(n, spec.loc);
      if (c.nodes_[id].kind != GateKind::Reg)
        throw Error(ErrorKind::Schema, where(spec.loc) + "regwrite '" + n +
                                           "' is not a REG");
      st.reg_writes.push_back(id);
    }
    for (const auto &[n, v] : spec.mux_bindings) {
      NetId id = resolve(n, spec.loc);
      if (c.nodes_[id].kind != GateKind::Mux)
        throw Error(ErrorKind::Schema,
                    where(spec.loc) + "mux binding '" + n + "' is not a MUX");
      if (v != 0 && v != 1)
        throw Error(ErrorKind::Schema,
                    where(spec.loc) + "mux binding for '" + n +
                        "' must be 0 or 1");
      if (st.binding_for(id))
        throw Error(ErrorKind::Schema, where(spec.loc) + "mux '" + n +
                                           "' bound twice in one state");
      st.mux_bindings.push_back({id, v});
    }
    fsm.states.push_back(std::move(st));
  }
  for (NetId id = 0; id < c.nodes_.size(); ++id) {
    GateKind k = c.nodes_[id].kind;
    if (k == GateKind::Input || k == GateKind::Const0 || k == GateKind::Const1)
      continue;
    if (owner[id] < 0)
      throw Error(ErrorKind::Schema, "net '" + c.nodes_[id].name +
                                         "' is not active in any fsm state");
  }
  c.fsm_ = std::move(fsm);
  return c;
}

std::vector<NetId> topo_order(const Circuit &c) {
  const auto &nodes = c.nodes();
  std::vector<std::size_t> pending(nodes.size());
  std::vector<std::vector<NetId>> users(nodes.size());
  for (NetId i = 0; i < nodes.size(); ++i) {
    pending[i] = nodes[i].operands.size();
    for (NetId op : nodes[i].operands)
      users[op].push_back(i);
  }
  std::priority_queue<NetId, std::vector<NetId>, std::greater<>> ready;
  for (NetId i = 0; i < nodes.size(); ++i)
    if (pending[i] == 0)
      ready.push(i);
  std::vector<NetId> order;
  order.reserve(nodes.size());
  while (!ready.empty()) {
    NetId n = ready.top();
    ready.pop();
    order.push_back(n);
    for (NetId u : users[n])
      if (--pending[u] == 0)
        ready.push(u);
  }
  if (order.size() == nodes.size())
    return order;

  // Walk operands among the unfinished nodes until one repeats.
  NetId start = 0;
  while (pending[start] == 0)
    ++start;
  std::vector<NetId> path;
  std::vector<int> pos(nodes.size(), -1);
  NetId cur = start;
  while (pos[cur] < 0) {
    pos[cur] = static_cast<int>(path.size());
    path.push_back(cur);
    for (NetId op : nodes[cur].operands)
      if (pending[op] != 0) {
        cur = op;
        break;
      }
  }
  std::string msg = "cycle: ";
  for (std::size_t i = static_cast<std::size_t>(pos[cur]); i < path.size();
       ++i)
    msg += nodes[path[i]].name + " <- ";
  msg += nodes[cur].name;
  throw Error(ErrorKind::Cycle, msg);
}

namespace {

// Rebuilds `c` node by node; `emit` may replace a node by several.
CircuitBuilder rebuild(
    const Circuit &c,
    const std::function<void(CircuitBuilder &, NetId)> &emit) {
  CircuitBuilder b;
  for (NetId i = 0; i < c.size(); ++i)
    emit(b, i);
  for (NetId o : c.outputs())
    b.output(c.name(o));
  return b;
}

std::vector<std::string> operand_names(const Circuit &c, NetId id) {
  std::vector<std::string> out;
  for (NetId op : c.node(id).operands)
    out.push_back(c.name(op));
  return out;
}

} // namespace

Circuit lower_mux(const Circuit &c) {
  bool any = std::any_of(c.nodes().begin(), c.nodes().end(),
                         [](const Node &n) { return n.kind == GateKind::Mux; });
  if (!any)
    return c;
  std::vector<std::vector<std::string>> added(c.size());
  CircuitBuilder b = rebuild(c, [&](CircuitBuilder &bb, NetId i) {
    const Node &n = c.node(i);
    if (n.kind == GateKind::Input) {
      bb.input(n.name);
      return;
    }
    if (n.kind != GateKind::Mux) {
      bb.gate(n.name, n.kind, operand_names(c, i));
      return;
    }
    const std::string &in0 = c.name(n.operands[0]);
    const std::string &in1 = c.name(n.operands[1]);
    const std::string &sel = c.name(n.operands[2]);
    std::string ns = n.name + "$ns", a0 = n.name + "$a0",
                a1 = n.name + "$a1", x = n.name + "$x";
    bb.gate(ns, GateKind::Not, {sel});
    bb.gate(a0, GateKind::And, {in0, ns});
    bb.gate(a1, GateKind::And, {in1, sel});
    bb.gate(x, GateKind::Xor, {a0, a1});
    bb.gate(n.name, GateKind::Buf, {x});
    added[i] = {ns, a0, a1, x};
  });
  if (c.fsm()) {
    // The lowered nodes join the MUX's state; select bindings have no MUX
    // left to attach to and are dropped.
    for (const auto &st : c.fsm()->states) {
      FsmStateSpec spec;
      spec.name = st.name;
      for (NetId a : st.active) {
        for (const auto &x : added[a])
          spec.active.push_back(x);
        spec.active.push_back(c.name(a));
      }
      for (NetId r : st.reg_writes)
        spec.reg_writes.push_back(c.name(r));
      b.state(std::move(spec));
    }
    b.enable_fsm();
  }
  return b.build();
}

Circuit resolve_muxes(const Circuit &c, const std::map<NetId, int> &bindings) {
  CircuitBuilder b =
      rebuild(c, [&](CircuitBuilder &bb, NetId i) {
        const Node &n = c.node(i);
        if (n.kind == GateKind::Input) {
          bb.input(n.name);
          return;
        }
        auto it = bindings.find(i);
        if (n.kind == GateKind::Mux && it != bindings.end()) {
          bb.gate(n.name, GateKind::Buf,
                  {c.name(n.operands[static_cast<std::size_t>(it->second)])});
          return;
        }
        bb.gate(n.name, n.kind, operand_names(c, i));
      });
  return b.build();
}

} // namespace maskverif
