// Shared helpers for the property and acceptance tests.
#pragma once

#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "maskverif/benchgen.hpp"
#include "maskverif/fsm_split.hpp"
#include "maskverif/oracle.hpp"

namespace support {

using namespace maskverif;

struct Fixture {
  Circuit c;
  InputLabeling l;
};

/// Random MUX-free or MUX-bearing circuit over at most `max_inputs` inputs.
/// Roles: up to two secrets with 2 shares each, plus masks and publics.
inline Fixture random_fixture(std::mt19937 &rng, bool with_mux = false,
                              int max_inputs = 9, int max_gates = 18) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  CircuitBuilder b;
  std::vector<std::pair<std::string, Role>> roles;
  std::vector<std::string> nets;
  int secrets = pick(1, 2);
  for (int s = 0; s < secrets; ++s)
    for (int k = 1; k <= 2; ++k) {
      std::string n = "s" + std::to_string(s) + "_" + std::to_string(k);
      b.input(n);
      roles.emplace_back(n, Role::make_share("S" + std::to_string(s), k));
      nets.push_back(n);
    }
  int extra = pick(1, max_inputs - 2 * secrets);
  for (int i = 0; i < extra; ++i) {
    bool mask = pick(0, 2) != 0;
    std::string n = (mask ? "r" : "p") + std::to_string(i);
    b.input(n);
    roles.emplace_back(n, mask ? Role::mask() : Role::pub());
    nets.push_back(n);
  }
  static const GateKind kinds[] = {GateKind::Xor,  GateKind::Xor,
                                   GateKind::And,  GateKind::Or,
                                   GateKind::Nand, GateKind::Nor,
                                   GateKind::Xnor, GateKind::Not,
                                   GateKind::Buf,  GateKind::Reg,
                                   GateKind::Mux};
  int gates = pick(3, max_gates);
  for (int g = 0; g < gates; ++g) {
    GateKind k = kinds[pick(0, with_mux ? 10 : 9)];
    std::vector<std::string> ops;
    for (std::size_t a = 0; a < arity(k); ++a)
      ops.push_back(nets[static_cast<std::size_t>(
          pick(0, static_cast<int>(nets.size()) - 1))]);
    std::string n = "g" + std::to_string(g);
    b.gate(n, k, ops);
    nets.push_back(n);
  }
  b.output(nets.back());
  Circuit c = b.build();
  InputLabeling l = InputLabeling::create(c, roles);
  return {std::move(c), std::move(l)};
}

/// Every MUX tied to the value some state binds it to.
inline Circuit fold_bindings(const Circuit &c) {
  if (!c.fsm())
    return c;
  std::map<NetId, int> b;
  for (const FsmState &s : c.fsm()->states)
    for (const MuxBinding &m : s.mux_bindings)
      b.emplace(m.mux, m.value);
  return resolve_muxes(c, b);
}

/// Reference evaluation of an FSM design on one input row: each operation
/// reads its operands in the state it executes in; a MUX follows the binding
/// of the state reading it, else its own state's binding.
class FsmEval {
public:
  explicit FsmEval(const Circuit &c) : c_(c), owner_(c.size(), -1) {
    const auto &st = c.fsm()->states;
    for (std::size_t s = 0; s < st.size(); ++s)
      for (NetId id : st[s].active)
        owner_[id] = static_cast<int>(s);
  }

  bool value(NetId net, std::uint64_t row) {
    if (row != row_) {
      memo_.clear();
      row_ = row;
    }
    int ctx = owner_[net] >= 0 ? owner_[net] : 0;
    return eval(net, ctx);
  }

private:
  std::optional<int> binding(NetId mux, int ctx) const {
    const auto &st = c_.fsm()->states;
    if (auto v = st[static_cast<std::size_t>(ctx)].binding_for(mux))
      return v;
    if (owner_[mux] >= 0)
      return st[static_cast<std::size_t>(owner_[mux])].binding_for(mux);
    return std::nullopt;
  }

  bool eval(NetId n, int ctx) {
    const Node &node = c_.node(n);
    if (node.kind == GateKind::Mux)
      if (auto v = binding(n, ctx))
        return eval(node.operands[static_cast<std::size_t>(*v)], ctx);
    auto key = std::pair(n, ctx);
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;
    int own = owner_[n] >= 0 ? owner_[n] : ctx;
    auto op = [&](std::size_t k) { return eval(node.operands[k], own); };
    bool v = false;
    switch (node.kind) {
    case GateKind::Input:
      v = (row_ >> *c_.input_position(n)) & 1;
      break;
    case GateKind::Const0: v = false; break;
    case GateKind::Const1: v = true; break;
    case GateKind::Buf:
    case GateKind::Reg: v = op(0); break;
    case GateKind::Not: v = !op(0); break;
    case GateKind::And: v = op(0) && op(1); break;
    case GateKind::Nand: v = !(op(0) && op(1)); break;
    case GateKind::Or: v = op(0) || op(1); break;
    case GateKind::Nor: v = !(op(0) || op(1)); break;
    case GateKind::Xor: v = op(0) != op(1); break;
    case GateKind::Xnor: v = op(0) == op(1); break;
    case GateKind::Mux: v = op(2) ? op(1) : op(0); break;
    }
    memo_.emplace(key, v);
    return v;
  }

  const Circuit &c_;
  std::vector<int> owner_;
  std::uint64_t row_ = ~std::uint64_t{0};
  std::map<std::pair<NetId, int>, bool> memo_;
};

/// Nets of `c` that are real operations (not inputs or constants).
inline std::set<NetId> op_set(const Circuit &c, const std::vector<NetId> &ids) {
  std::set<NetId> out;
  for (NetId id : ids) {
    GateKind k = c.node(id).kind;
    if (k != GateKind::Input && k != GateKind::Const0 && k != GateKind::Const1)
      out.insert(id);
  }
  return out;
}

/// Coverage check: union of sub-design operations (mapped back to the
/// original design, bound MUXes excluded) equals backward-reachable
/// operations. Returns a description of the first mismatch, or "".
inline std::string coverage_mismatch(const Circuit &c, const InputLabeling &l) {
  std::set<NetId> covered;
  for (const SubDesign &sd : split_all(c, l))
    for (NetId i = 0; i < sd.circuit.size(); ++i) {
      NetId o = sd.origin[i];
      const Node &n = c.node(o);
      if (n.kind == GateKind::Input || n.kind == GateKind::Const0 ||
          n.kind == GateKind::Const1)
        continue;
      // folded MUX copies stand in for the MUX they were made from
      covered.insert(o);
    }
  auto reach = reachable_ops(c);
  std::set<NetId> want(reach.begin(), reach.end());
  for (NetId id : want)
    if (!covered.count(id))
      return "reachable op '" + c.name(id) + "' not in any sub-design";
  for (NetId id : covered)
    if (!want.count(id))
      return "sub-design op '" + c.name(id) + "' not reachable";
  return "";
}

/// Compares every sub-design output with the reference FSM evaluation on all
/// input rows. Returns the first mismatch, or "".
inline std::string fidelity_mismatch(const Circuit &c, const InputLabeling &l) {
  const std::size_t n = c.inputs().size();
  for (const SubDesign &sd : split_all(c, l)) {
    auto tables = simulate_all(sd.circuit);
    std::vector<std::size_t> pos; // sub input k -> whole input position
    for (NetId in : sd.circuit.inputs())
      pos.push_back(*c.input_position(c.at(sd.circuit.name(in))));
    FsmEval ref(c);
    for (std::uint64_t row = 0; row < (std::uint64_t{1} << n); ++row) {
      std::size_t sub = 0;
      for (std::size_t k = 0; k < pos.size(); ++k)
        sub |= ((row >> pos[k]) & 1) << k;
      for (NetId o : sd.circuit.outputs()) {
        bool want = ref.value(sd.origin[o], row);
        if (tables[o].get(sub) != want)
          return sd.state + ": output '" + sd.circuit.name(o) +
                 "' differs at row " + std::to_string(row);
      }
    }
  }
  return "";
}

} // namespace support
