// Copyright maskverif contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "maskverif/algebra.hpp"
#include "maskverif/circuit.hpp"
#include "maskverif/labeling.hpp"

namespace maskverif {

enum class Model : std::uint8_t { Stable, Transient };

std::string_view to_string(Model m);

/// Default per-net label size cap: 2^20, or MASKVERIF_CAP when set.
std::size_t default_cap();

struct LabelMap {
  std::vector<CorrelationSet> stable;    // indexed by NetId
  std::vector<CorrelationSet> transient; // empty when not requested

  const CorrelationSet &of(Model m, NetId id) const {
    return m == Model::Stable ? stable.at(id) : transient.at(id);
  }
};

/// One topological pass over a MUX-free circuit. Throws Error(ResourceCap)
/// naming the first net whose label outgrows `cap`.
LabelMap propagate(const Circuit &c, const InputLabeling &l,
                   bool with_transient = true,
                   std::size_t cap = default_cap());

struct Leak {
  NetId net;
  std::optional<NetId> partner; // second probe for order 2
  Monomial monomial;
};

struct Verdict {
  Model model = Model::Stable;
  int order = 1;
  bool secure = true;
  std::vector<Leak> leaks; // topological order of `net`, then `partner`
  std::size_t assertions = 0; // check_leak invocations
};

Verdict verify(const Circuit &c, const InputLabeling &l, Model model, int d,
               std::size_t cap = default_cap());

/// Leak scan over labels that were already propagated.
Verdict verify_labels(const Circuit &c, const LabelMap &labels,
                      const VarTable &vars, Model model, int d,
                      std::size_t cap = default_cap());

} // namespace maskverif
