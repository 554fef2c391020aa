// Copyright maskverif contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "maskverif/circuit.hpp"
#include "maskverif/labeling.hpp"

namespace maskverif {

struct SubDesign {
  std::string state;
  std::size_t index = 0;
  Circuit circuit;        // MUX-resolved, REGs kept, no FSM
  InputLabeling labeling; // restricted to circuit.inputs()
  std::vector<NetId> origin;        // sub-design NetId -> original NetId
  std::vector<NetId> unbound_muxes; // original ids of MUXes left symbolic
};

/// The state's active list with bound MUXes removed. Sorted by NetId.
/// Throws Error(StateUnknown).
std::vector<NetId> active_ops(const Circuit &c, std::string_view state);

/// Operations needed by the state: its active ops plus everything they reach
/// backwards through earlier states, stopping at primary inputs. Bound MUXes
/// are looked through, not included. Sorted by NetId.
/// Throws Error(OrderingViolation) when an operand comes from a later state.
std::vector<NetId> dependency_closure(const Circuit &c, std::string_view state);

SubDesign extract_subdesign(const Circuit &c, const InputLabeling &l,
                            std::string_view state);

std::vector<SubDesign> split_all(const Circuit &c, const InputLabeling &l);

/// Non-input nodes reachable backwards from the primary outputs and every
/// state's register writes, following all MUX operands. Sorted by NetId.
std::vector<NetId> reachable_ops(const Circuit &c);

} // namespace maskverif
