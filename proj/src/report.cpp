// Copyright maskverif contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "maskverif/pipeline.hpp"

namespace maskverif {

namespace {

using ojson = nlohmann::ordered_json;

ojson leak_json(const ReportLeak &k) {
  ojson j;
  j["net"] = k.net;
  if (k.partner)
    j["partner"] = *k.partner;
  j["monomial"] = k.monomial;
  return j;
}

std::string json_report(const Report &r, bool timing) {
  ojson doc;
  doc["design"] = r.design;
  doc["mode"] = std::string(to_string(r.mode));
  doc["order"] = r.order;
  ojson models = ojson::array();
  for (Model m : r.models)
    models.push_back(std::string(to_string(m)));
  doc["models"] = models;
  ojson states = ojson::array();
  for (const StateEntry &s : r.states) {
    ojson js;
    js["name"] = s.name;
    for (Model m : r.models) {
      const ModelResult &mr = s.results.at(m);
      ojson jm;
      jm["secure"] = mr.secure;
      ojson leaks = ojson::array();
      for (const ReportLeak &k : mr.leaks)
        leaks.push_back(leak_json(k));
      jm["leaks"] = leaks;
      const Metrics &mt = mr.metrics;
      jm["metrics"] = {{"vars", mt.vars},
                       {"assertions", mt.assertions},
                       {"loc_netlist", mt.loc_netlist},
                       {"digraph_nodes", mt.digraph_nodes},
                       {"digraph_edges", mt.digraph_edges}};
      if (mr.oracle_secure)
        jm["oracle_secure"] = *mr.oracle_secure;
      if (timing)
        jm["time_s"] = mr.time_s;
      js[std::string(to_string(m))] = jm;
    }
    if (!s.unbound_muxes.empty())
      js["unbound_muxes"] = s.unbound_muxes;
    states.push_back(js);
  }
  doc["states"] = states;
  ojson overall = ojson::object();
  for (Model m : r.models)
    overall[std::string(to_string(m))] = r.overall.at(m);
  doc["overall"] = overall;
  doc["overall_secure"] = r.secure();
  doc["first_failure"] =
      r.first_failure ? ojson(*r.first_failure) : ojson(nullptr);
  ojson cases = ojson::array();
  for (const CaseNote &c : r.cases)
    cases.push_back({{"model", std::string(to_string(c.model))},
                     {"from", c.from},
                     {"to", c.to},
                     {"case", c.kind}});
  doc["cases"] = cases;
  return doc.dump(2) + "\n";
}

std::string monomial_text(const std::vector<std::string> &m) {
  std::string s = "{";
  for (std::size_t i = 0; i < m.size(); ++i)
    s += (i ? "," : "") + m[i];
  return s + "}";
}

std::string text_report(const Report &r, bool timing) {
  std::ostringstream os;
  os << "design " << r.design << ", mode " << to_string(r.mode) << ", order "
     << r.order << "\n\n";
  std::size_t w = 5;
  for (const auto &s : r.states)
    w = std::max(w, s.name.size());
  os << std::left << std::setw(static_cast<int>(w) + 2) << "State";
  for (Model m : r.models)
    os << std::setw(7) << (m == Model::Stable ? "S" : "T");
  os << std::setw(14) << "Vars" << std::setw(14) << "Assertions"
     << std::setw(16) << "Digraph" << std::setw(8) << "LoC";
  if (timing)
    os << std::setw(12) << "Time(s)";
  os << "Result\n";
  auto per_model = [&](const StateEntry &s, auto field) {
    std::string out;
    for (std::size_t i = 0; i < r.models.size(); ++i)
      out += (i ? "/" : "") + field(s.results.at(r.models[i]));
    return out;
  };
  for (const auto &s : r.states) {
    bool ok = true;
    os << std::setw(static_cast<int>(w) + 2) << s.name;
    for (Model m : r.models) {
      ok = ok && s.results.at(m).secure;
      os << std::setw(7) << (s.results.at(m).secure ? "True" : "False");
    }
    os << std::setw(14) << per_model(s, [](const ModelResult &x) {
      return std::to_string(x.metrics.vars);
    });
    os << std::setw(14) << per_model(s, [](const ModelResult &x) {
      return std::to_string(x.metrics.assertions);
    });
    const Metrics &g = s.results.at(r.models.front()).metrics;
    os << std::setw(16)
       << std::to_string(g.digraph_nodes) + ":" +
              std::to_string(g.digraph_edges);
    os << std::setw(8) << g.loc_netlist;
    if (timing) {
      std::ostringstream t;
      t << std::fixed << std::setprecision(4);
      double sum = 0;
      for (const auto &[m, x] : s.results)
        sum += x.time_s;
      t << sum;
      os << std::setw(12) << t.str();
    }
    os << (ok ? "SECURE" : "INSECURE") << "\n";
  }
  bool any_leak = false;
  for (const auto &s : r.states)
    for (Model m : r.models)
      for (const ReportLeak &k : s.results.at(m).leaks) {
        if (!any_leak)
          os << "\nleaks:\n";
        any_leak = true;
        os << "  " << s.name << " " << to_string(m) << " " << k.net;
        if (k.partner)
          os << "," << *k.partner;
        os << " " << monomial_text(k.monomial) << "\n";
      }
  bool any_oracle = false;
  for (const auto &s : r.states)
    for (Model m : r.models)
      if (auto o = s.results.at(m).oracle_secure) {
        if (!any_oracle)
          os << "\noracle:\n";
        any_oracle = true;
        os << "  " << s.name << " " << to_string(m) << " "
           << (*o ? "secure" : "insecure") << "\n";
      }
  for (const auto &s : r.states)
    for (const auto &m : s.unbound_muxes)
      os << "\nnote: " << s.name << " keeps symbolic MUX " << m;
  if (!r.cases.empty()) {
    os << "\ncases:\n";
    for (const CaseNote &c : r.cases)
      os << "  " << to_string(c.model) << " " << c.from << " -> " << c.to
         << ": Case" << c.kind << "\n";
  }
  os << "\noverall:";
  for (Model m : r.models)
    os << " " << to_string(m) << "="
       << (r.overall.at(m) ? "secure" : "insecure");
  os << "\nfirst failure: " << (r.first_failure ? *r.first_failure : "none")
     << "\n";
  return os.str();
}

} // namespace

std::string emit_report(const Report &r, ReportFormat f, bool timing) {
  return f == ReportFormat::Json ? json_report(r, timing)
                                 : text_report(r, timing);
}

} // namespace maskverif
