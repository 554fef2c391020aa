// Copyright maskverif contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "maskverif/circuit.hpp"
#include "maskverif/labeling.hpp"
#include "maskverif/labels.hpp"

namespace maskverif {

inline constexpr std::size_t kMaxOracleInputs = 24;

/// Values of one net over all 2^n assignments of the circuit inputs. Bit x
/// is the value when input k (in Circuit::inputs() order) equals bit k of x.
class TruthTable {
public:
  TruthTable() = default;
  explicit TruthTable(std::size_t n_inputs);

  std::size_t inputs() const { return n_; }
  std::size_t length() const { return std::size_t{1} << n_; }
  bool get(std::size_t x) const { return words_[x >> 6] >> (x & 63) & 1; }
  void set(std::size_t x, bool v);
  bool is_constant() const;

  std::vector<std::uint64_t> &words() { return words_; }
  const std::vector<std::uint64_t> &words() const { return words_; }
  /// Valid bits of the last word (all ones unless n < 6).
  std::uint64_t tail_mask() const;

  bool operator==(const TruthTable &) const = default;

private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Exhaustive simulation, REG as identity. Result indexed by NetId.
/// Throws Error(TooManyInputs) above kMaxOracleInputs inputs.
std::vector<TruthTable> simulate_all(const Circuit &c);

/// Unnormalized Walsh spectrum: entry T is sum_x (-1)^(f(x) + T.x), so the
/// +-1 Fourier coefficient is entry / 2^n.
std::vector<std::int32_t> walsh_spectrum(const TruthTable &t);

/// Monomials (through the labeling's base sets) of every nonzero coefficient.
CorrelationSet fourier_support(const TruthTable &t, const Circuit &c,
                               const InputLabeling &l);

/// Nets revealed by a glitch-extended probe on `probe`: its combinational
/// fan-in down to REG outputs and primary inputs, both included.
std::vector<NetId> probe_cone(const Circuit &c, NetId probe);

/// Exact first-order probing checks with uniform masks. Not thread safe.
class Oracle {
public:
  Oracle(const Circuit &c, const InputLabeling &l);

  const std::vector<TruthTable> &tables() const { return tables_; }

  /// Some public assignment makes the distribution of `net` secret dependent.
  bool stable_leak(NetId net) const;
  /// Same for the joint distribution of probe_cone(net).
  bool transient_leak(NetId net) const;
  bool leak(Model m, NetId net) const {
    return m == Model::Stable ? stable_leak(net) : transient_leak(net);
  }
  CorrelationSet support(NetId net) const;

  /// Checks every net (INPUT nets only when asked). Leak monomials are phi.
  Verdict run(Model m, bool include_inputs = false) const;

private:
  bool depends_on_secret(const std::vector<NetId> &observed) const;

  const Circuit &c_;
  const InputLabeling &l_;
  std::vector<TruthTable> tables_;
  std::size_t n_secret_ = 0, n_public_ = 0, n_mask_ = 0;
  std::vector<std::uint32_t> assignment_; // base-var index -> input assignment
  mutable std::map<std::vector<NetId>, bool> cache_;
};

Verdict oracle_stable(const Circuit &c, const InputLabeling &l);
Verdict oracle_transient(const Circuit &c, const InputLabeling &l);

} // namespace maskverif
