// Copyright maskverif contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace maskverif {

enum class GateKind : std::uint8_t {
  Input,
  Const0,
  Const1,
  Buf,
  Not,
  And,
  Nand,
  Or,
  Nor,
  Xor,
  Xnor,
  Mux, // operands: in0, in1, sel
  Reg,
};

std::size_t arity(GateKind kind);
std::string_view to_string(GateKind kind);
std::optional<GateKind> gate_kind_from_string(std::string_view name);

/// Index of a node inside its circuit. Only meaningful together with the
/// circuit that produced it.
using NetId = std::size_t;

struct Node {
  std::string name;
  GateKind kind = GateKind::Input;
  std::vector<NetId> operands;
};

struct MuxBinding {
  NetId mux;
  int value; // 0 selects in0, 1 selects in1
};

struct FsmState {
  std::string name;
  std::vector<NetId> active;
  std::vector<NetId> reg_writes;
  std::vector<MuxBinding> mux_bindings;

  std::optional<int> binding_for(NetId mux) const;
};

struct FsmSchedule {
  std::vector<FsmState> states;

  std::optional<std::size_t> find(std::string_view name) const;
};

/// Immutable gate-level netlist. Nodes keep declaration order; every
/// instance handed out by CircuitBuilder::build() has passed validation.
class Circuit {
public:
  const std::vector<Node> &nodes() const { return nodes_; }
  const Node &node(NetId id) const { return nodes_.at(id); }
  const std::string &name(NetId id) const { return nodes_.at(id).name; }
  std::size_t size() const { return nodes_.size(); }

  const std::vector<NetId> &inputs() const { return inputs_; }
  const std::vector<NetId> &outputs() const { return outputs_; }
  const std::optional<FsmSchedule> &fsm() const { return fsm_; }

  std::optional<NetId> find(std::string_view name) const;
  /// Throws Error(UnknownNet) for names that are not declared.
  NetId at(std::string_view name) const;

  /// Position of `id` in inputs(), if it is a primary input.
  std::optional<std::size_t> input_position(NetId id) const;

  bool operator==(const Circuit &other) const;

private:
  friend class CircuitBuilder;

  std::vector<Node> nodes_;
  std::vector<NetId> inputs_;
  std::vector<NetId> outputs_;
  std::optional<FsmSchedule> fsm_;
  std::unordered_map<std::string, NetId> index_;
};

struct SourceLoc {
  int line = 0;
  int column = 0;
};

/// Name-based FSM state description, resolved against the netlist at build().
struct FsmStateSpec {
  std::string name;
  std::vector<std::string> active;
  std::vector<std::string> reg_writes;
  std::vector<std::pair<std::string, int>> mux_bindings;
  SourceLoc loc;
};

/// Collects declarations by name (forward references allowed) and produces a
/// validated Circuit.
class CircuitBuilder {
public:
  CircuitBuilder &input(std::string name, SourceLoc loc = {});
  CircuitBuilder &gate(std::string name, GateKind kind,
                       std::vector<std::string> operands, SourceLoc loc = {});
  CircuitBuilder &output(std::string name, SourceLoc loc = {});
  CircuitBuilder &state(FsmStateSpec spec);
  /// Marks the circuit as FSM-annotated even if no state is declared.
  CircuitBuilder &enable_fsm();

  Circuit build() const;

private:
  struct PendingNode {
    std::string name;
    GateKind kind;
    std::vector<std::string> operands;
    SourceLoc loc;
  };
  std::vector<PendingNode> nodes_;
  std::vector<std::pair<std::string, SourceLoc>> outputs_;
  std::vector<FsmStateSpec> states_;
  bool has_fsm_ = false;
};

Circuit parse_netlist(std::string_view text);
/// Canonical textual form; parse_netlist(dump_netlist(c)) == c.
std::string dump_netlist(const Circuit &c);

Circuit import_structural_json(std::string_view text);
std::string export_structural_json(const Circuit &c);

/// Deterministic topological order, ties broken by declaration order.
/// Throws Error(Cycle) naming one cycle.
std::vector<NetId> topo_order(const Circuit &c);

/// Replaces every MUX(in0, in1, sel) by XOR(AND(in0, NOT sel), AND(in1, sel)).
/// The MUX net survives as a BUF of the new XOR so net names stay valid.
Circuit lower_mux(const Circuit &c);

/// Replaces each bound MUX by a BUF of its selected input. Unbound MUXes are
/// kept. The FSM annotation is dropped.
Circuit resolve_muxes(const Circuit &c, const std::map<NetId, int> &bindings);

} // namespace maskverif
