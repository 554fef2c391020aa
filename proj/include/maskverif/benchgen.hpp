// Copyright maskverif contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "maskverif/circuit.hpp"
#include "maskverif/labeling.hpp"

namespace maskverif {

enum class Scheme : std::uint8_t { DOM, HPC1, HPC2, COMAR };
enum class Topology : std::uint8_t { WorkedExample, SingleGadget, Cascade, PresentSbox };

std::string_view to_string(Scheme s);

struct BenchSpec {
  std::string name;
  Scheme scheme;
  Topology topology;
  std::size_t states; // 0 = no FSM
  bool registered;
  bool flawed;
};

struct Bench {
  BenchSpec spec;
  Circuit circuit;
  InputLabeling labels;
};

/// Every benchmark `generate` knows, in listing order.
const std::vector<BenchSpec> &bench_catalog();

/// Throws Error(Usage) for unknown names or a flaw on a bench without one.
Bench generate(std::string_view name, bool flawed = false);

Bench gen_worked_example();
Bench gen_dom_and(int version);
/// `states` 0 picks the default schedule (DOM 4, others 3); HPC1 also takes 4.
/// Flawed cascades are DOM only and use a 2-state schedule.
Bench gen_cascade(Scheme scheme, bool flawed = false, std::size_t states = 0);
Bench gen_present_sbox(Scheme scheme);

/// Reference S-box, bit 0 = least significant.
std::array<std::uint8_t, 16> present_sbox_table();

enum class ReassocStyle : std::uint8_t {
  Swap,    // (cross ^ r) ^ inner  ->  (inner ^ r) ^ cross
  Balance, // (cross ^ r) ^ inner  ->  (cross ^ inner) ^ r
};

/// Rewires the XOR `target` = (cross ^ r) ^ inner, where the masking XOR may
/// sit behind one REG and r is a primary input. Names are preserved.
/// Throws Error(StructureNotFound).
Circuit inject_reassociation(const Circuit &c, std::string_view target,
                             ReassocStyle style = ReassocStyle::Balance);

} // namespace maskverif
