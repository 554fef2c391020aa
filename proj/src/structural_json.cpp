// Copyright maskverif contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <json.hpp>

#include "maskverif/circuit.hpp"
#include "maskverif/error.hpp"

namespace maskverif {

using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void schema(const std::string &msg) {
  throw Error(ErrorKind::Schema, "structural json: " + msg);
}

const ojson &member(const ojson &obj, const char *key, const std::string &ctx) {
  auto it = obj.find(key);
  if (it == obj.end())
    schema(ctx + " lacks \"" + key + "\"");
  return *it;
}

std::vector<std::string> strings(const ojson &arr, const std::string &ctx) {
  if (!arr.is_array())
    schema(ctx + " must be an array");
  std::vector<std::string> out;
  for (const auto &v : arr) {
    if (!v.is_string())
      schema(ctx + " must contain strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

void check_keys(const ojson &obj, std::initializer_list<const char *> allowed,
                const std::string &ctx) {
  if (!obj.is_object())
    schema(ctx + " must be an object");
  for (const auto &[k, v] : obj.items()) {
    bool ok = false;
    for (const char *a : allowed)
      ok = ok || k == a;
    if (!ok)
      schema(ctx + " has unexpected key \"" + k + "\"");
  }
}

} // namespace

Circuit import_structural_json(std::string_view text) {
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const ojson::parse_error &e) {
    throw Error(ErrorKind::Syntax, std::string("structural json: ") + e.what());
  }
  check_keys(doc, {"inputs", "outputs", "nodes", "fsm"}, "document");
  auto inputs = strings(member(doc, "inputs", "document"), "\"inputs\"");
  auto outputs = strings(member(doc, "outputs", "document"), "\"outputs\"");
  const ojson &nodes = member(doc, "nodes", "document");
  if (!nodes.is_array())
    schema("\"nodes\" must be an array");

  CircuitBuilder b;
  std::vector<std::string> declared_inputs;
  for (const auto &n : nodes) {
    check_keys(n, {"id", "kind", "ops"}, "node");
    const ojson &id = member(n, "id", "node");
    const ojson &kind = member(n, "kind", "node");
    if (!id.is_string() || !kind.is_string())
      schema("node \"id\" and \"kind\" must be strings");
    auto k = gate_kind_from_string(kind.get<std::string>());
    if (!k)
      schema("unknown gate kind \"" + kind.get<std::string>() + "\"");
    std::vector<std::string> ops;
    if (n.contains("ops"))
      ops = strings(n["ops"], "\"ops\"");
    std::string name = id.get<std::string>();
    if (*k == GateKind::Input) {
      if (!ops.empty())
        schema("INPUT node \"" + name + "\" has operands");
      declared_inputs.push_back(name);
      b.input(name);
    } else {
      b.gate(name, *k, std::move(ops));
    }
  }
  if (declared_inputs != inputs)
    schema("\"inputs\" does not match the INPUT nodes in declaration order");
  for (const auto &o : outputs)
    b.output(o);

  if (doc.contains("fsm") && !doc["fsm"].is_null()) {
    const ojson &fsm = doc["fsm"];
    check_keys(fsm, {"states"}, "\"fsm\"");
    b.enable_fsm();
    const ojson &states = member(fsm, "states", "\"fsm\"");
    if (!states.is_array())
      schema("\"fsm.states\" must be an array");
    for (const auto &s : states) {
      check_keys(s, {"name", "active", "regwrite", "mux"}, "state");
      const ojson &name = member(s, "name", "state");
      if (!name.is_string())
        schema("state \"name\" must be a string");
      FsmStateSpec spec;
      spec.name = name.get<std::string>();
      if (s.contains("active"))
        spec.active = strings(s["active"], "\"active\"");
      if (s.contains("regwrite"))
        spec.reg_writes = strings(s["regwrite"], "\"regwrite\"");
      if (s.contains("mux")) {
        const ojson &mux = s["mux"];
        if (!mux.is_object())
          schema("\"mux\" must be an object");
        for (const auto &[m, v] : mux.items()) {
          if (!v.is_number_integer())
            schema("mux binding for \"" + m + "\" must be 0 or 1");
          spec.mux_bindings.emplace_back(m, v.get<int>());
        }
      }
      b.state(std::move(spec));
    }
  }
  return b.build();
}

std::string export_structural_json(const Circuit &c) {
  ojson doc;
  auto names = [&](const std::vector<NetId> &ids) {
    ojson arr = ojson::array();
    for (NetId i : ids)
      arr.push_back(c.name(i));
    return arr;
  };
  doc["inputs"] = names(c.inputs());
  doc["outputs"] = names(c.outputs());
  ojson nodes = ojson::array();
  for (const Node &n : c.nodes()) {
    ojson j;
    j["id"] = n.name;
    j["kind"] = std::string(to_string(n.kind));
    j["ops"] = names(n.operands);
    nodes.push_back(std::move(j));
  }
  doc["nodes"] = std::move(nodes);
  if (c.fsm()) {
    ojson states = ojson::array();
    for (const FsmState &st : c.fsm()->states) {
      ojson j;
      j["name"] = st.name;
      j["active"] = names(st.active);
      j["regwrite"] = names(st.reg_writes);
      ojson mux = ojson::object();
      for (const MuxBinding &mb : st.mux_bindings)
        mux[c.name(mb.mux)] = mb.value;
      j["mux"] = std::move(mux);
      states.push_back(std::move(j));
    }
    doc["fsm"]["states"] = std::move(states);
  }
  return doc.dump(2) + "\n";
}

} // namespace maskverif
