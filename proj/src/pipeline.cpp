// Copyright maskverif contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "maskverif/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <set>

#include "maskverif/oracle.hpp"

namespace maskverif {

std::string_view to_string(Mode m) {
  return m == Mode::Statewise ? "statewise" : "monolithic";
}

bool Report::secure() const {
  return std::all_of(overall.begin(), overall.end(),
                     [](const auto &kv) { return kv.second; });
}

std::vector<std::string> mux_select_inputs(const Circuit &c) {
  std::set<NetId> sels;
  for (const Node &n : c.nodes())
    if (n.kind == GateKind::Mux && c.node(n.operands[2]).kind == GateKind::Input)
      sels.insert(n.operands[2]);
  std::vector<std::string> out;
  for (NetId in : c.inputs())
    if (sels.count(in))
      out.push_back(c.name(in));
  return out;
}

Metrics collect_metrics(const Circuit &c, const LabelMap &labels,
                        Model m, const Verdict &v) {
  Metrics out;
  for (NetId id = 0; id < c.size(); ++id)
    out.vars += labels.of(m, id).size();
  out.assertions = v.assertions;
  std::string text = dump_netlist(c);
  out.loc_netlist =
      static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
  out.digraph_nodes = c.size();
  for (const Node &n : c.nodes())
    out.digraph_edges += n.operands.size();
  return out;
}

namespace {

using Namer = std::function<std::string(const std::string &)>;

// Lowered helper nets are named "<mux>$..."; report them under the MUX.
std::string strip_lowering(const std::string &n) {
  return n.substr(0, n.find('$'));
}

struct Unit {
  std::string name;
  Circuit circuit; // MUX-free
  InputLabeling labeling;
  Namer original;
  std::vector<std::string> unbound;
};

ModelResult check(const Unit &u, Model m, const RunOptions &opt) {
  auto t0 = std::chrono::steady_clock::now();
  LabelMap labels =
      propagate(u.circuit, u.labeling, m == Model::Transient, opt.cap);
  Verdict v =
      verify_labels(u.circuit, labels, u.labeling.vars(), m, opt.order, opt.cap);
  ModelResult r;
  r.secure = v.secure;
  for (const Leak &k : v.leaks) {
    ReportLeak rl;
    rl.net = u.original(u.circuit.name(k.net));
    if (k.partner)
      rl.partner = u.original(u.circuit.name(*k.partner));
    rl.monomial = u.labeling.vars().tokens(k.monomial);
    r.leaks.push_back(std::move(rl));
  }
  r.metrics = collect_metrics(u.circuit, labels, m, v);
  if (opt.oracle)
    r.oracle_secure = Oracle(u.circuit, u.labeling).run(m).secure;
  r.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                 .count();
  return r;
}

Report run_units(const std::vector<Unit> &units, Mode mode,
                 const RunOptions &opt) {
  Report rep;
  rep.design = opt.design;
  rep.mode = mode;
  rep.models = opt.models;
  rep.order = opt.order;
  std::vector<std::vector<std::future<ModelResult>>> jobs(units.size());
  for (std::size_t i = 0; i < units.size(); ++i)
    for (Model m : opt.models)
      jobs[i].push_back(std::async(std::launch::async, check,
                                   std::cref(units[i]), m, std::cref(opt)));
  // Drain every future before rethrowing so no task outlives `units`.
  std::exception_ptr first_error;
  for (std::size_t i = 0; i < units.size(); ++i) {
    StateEntry e;
    e.name = units[i].name;
    e.unbound_muxes = units[i].unbound;
    for (std::size_t k = 0; k < opt.models.size(); ++k) {
      try {
        e.results[opt.models[k]] = jobs[i][k].get();
      } catch (...) {
        if (!first_error)
          first_error = std::current_exception();
      }
    }
    rep.states.push_back(std::move(e));
  }
  if (first_error)
    std::rethrow_exception(first_error);

  for (Model m : opt.models) {
    bool all = true;
    for (const auto &s : rep.states)
      all = all && s.results.at(m).secure;
    rep.overall[m] = all;
  }
  for (const auto &s : rep.states) {
    bool ok = true;
    for (const auto &[m, r] : s.results)
      ok = ok && r.secure;
    if (!ok) {
      rep.first_failure = s.name;
      break;
    }
  }
  for (Model m : opt.models)
    for (std::size_t i = 0; i + 1 < rep.states.size(); ++i) {
      bool fx = !rep.states[i].results.at(m).secure;
      bool fy = !rep.states[i + 1].results.at(m).secure;
      if (fx || fy)
        rep.cases.push_back({m, rep.states[i].name, rep.states[i + 1].name,
                             fx && fy ? 3 : (fx ? 1 : 2)});
    }
  return rep;
}

Unit unit_for(const SubDesign &sd, const Circuit &original) {
  Unit u;
  u.name = sd.state;
  u.circuit = lower_mux(sd.circuit);
  u.labeling = sd.labeling;
  for (NetId m : sd.unbound_muxes)
    u.unbound.push_back(original.name(m));
  u.original = [sub = sd.circuit, origin = sd.origin,
                &original](const std::string &n) {
    NetId id = sub.at(strip_lowering(n));
    return original.name(origin[id]);
  };
  return u;
}

} // namespace

Report run_statewise(const Circuit &c, const InputLabeling &l,
                     const RunOptions &opt) {
  std::vector<Unit> units;
  if (c.fsm()) {
    for (const SubDesign &sd : split_all(c, l))
      units.push_back(unit_for(sd, c));
  } else {
    Unit u;
    u.name = "all";
    u.circuit = lower_mux(c);
    u.labeling = l;
    for (const Node &n : c.nodes())
      if (n.kind == GateKind::Mux)
        u.unbound.push_back(n.name);
    u.original = strip_lowering;
    units.push_back(std::move(u));
  }
  return run_units(units, Mode::Statewise, opt);
}

Report run_monolithic(const Circuit &c, const InputLabeling &l,
                      const RunOptions &opt) {
  Unit u;
  u.name = "design";
  auto sels = mux_select_inputs(c);
  u.labeling = sels.empty() ? l : l.with_public(c, sels);
  u.circuit = lower_mux(c);
  u.original = strip_lowering;
  std::vector<Unit> units;
  units.push_back(std::move(u));
  return run_units(units, Mode::Monolithic, opt);
}

} // namespace maskverif
