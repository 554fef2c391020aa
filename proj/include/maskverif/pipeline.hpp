// Copyright maskverif contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maskverif/circuit.hpp"
#include "maskverif/fsm_split.hpp"
#include "maskverif/labeling.hpp"
#include "maskverif/labels.hpp"

namespace maskverif {

enum class Mode : std::uint8_t { Statewise, Monolithic };
std::string_view to_string(Mode m);

struct Metrics {
  std::size_t vars = 0;          // monomials summed over all labels
  std::size_t assertions = 0;    // check_leak invocations
  std::size_t loc_netlist = 0;   // lines of the dumped netlist
  std::size_t digraph_nodes = 0; // nets of the sub-design
  std::size_t digraph_edges = 0; // operand edges

  bool operator==(const Metrics &) const = default;
};

struct ReportLeak {
  std::string net; // original design name
  std::optional<std::string> partner;
  std::vector<std::string> monomial; // kind-prefixed tokens
};

struct ModelResult {
  bool secure = true;
  std::vector<ReportLeak> leaks;
  Metrics metrics;
  double time_s = 0;
  std::optional<bool> oracle_secure;
};

struct StateEntry {
  std::string name;
  std::map<Model, ModelResult> results;
  std::vector<std::string> unbound_muxes;
};

/// Relation between consecutive sub-designs when at least one fails.
struct CaseNote {
  Model model;
  std::string from, to;
  int kind; // 1: from fails, 2: to fails, 3: both fail
};

struct Report {
  std::string design;
  Mode mode = Mode::Statewise;
  std::vector<Model> models;
  int order = 1;
  std::vector<StateEntry> states;
  std::map<Model, bool> overall;
  std::optional<std::string> first_failure;
  std::vector<CaseNote> cases;

  bool secure() const;
};

struct RunOptions {
  std::vector<Model> models{Model::Stable, Model::Transient};
  int order = 1;
  bool oracle = false;
  std::size_t cap = default_cap();
  std::string design = "design";
};

/// Splits per FSM state (a design without FSM is one state "all") and
/// verifies every state under every model, in parallel.
Report run_statewise(const Circuit &c, const InputLabeling &l,
                     const RunOptions &opt);

/// Whole-design check: MUX selects become public inputs, MUXes are lowered.
Report run_monolithic(const Circuit &c, const InputLabeling &l,
                      const RunOptions &opt);

Metrics collect_metrics(const Circuit &c, const LabelMap &labels,
                        Model m, const Verdict &v);

enum class ReportFormat : std::uint8_t { Text, Json };

/// Byte-deterministic unless `timing` adds wall-clock fields.
std::string emit_report(const Report &r, ReportFormat f, bool timing = false);

/// Primary inputs that drive a MUX select, in input order.
std::vector<std::string> mux_select_inputs(const Circuit &c);

} // namespace maskverif
