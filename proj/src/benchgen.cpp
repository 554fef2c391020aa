// Copyright maskverif contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "maskverif/benchgen.hpp"

#include <map>
#include <optional>

#include "maskverif/error.hpp"

namespace maskverif {

std::string_view to_string(Scheme s) {
  switch (s) {
  case Scheme::DOM: return "DOM";
  case Scheme::HPC1: return "HPC1";
  case Scheme::HPC2: return "HPC2";
  case Scheme::COMAR: return "COMAR";
  }
  return "?";
}

namespace {

using Pair = std::array<std::string, 2>;

// Netlist assembly with a "current state" cursor for FSM designs.
class Gen {
public:
  std::string input(const std::string &n, Role r) {
    b_.input(n);
    roles_.emplace_back(n, std::move(r));
    return n;
  }
  Pair shares(const std::string &base, const std::string &secret) {
    return {input(base + "0", Role::make_share(secret, 1)),
            input(base + "1", Role::make_share(secret, 2))};
  }
  std::string mask(const std::string &n) { return input(n, Role::mask()); }
  std::string pub(const std::string &n) { return input(n, Role::pub()); }

  void state(const std::string &name) {
    FsmStateSpec s;
    s.name = name;
    states_.push_back(std::move(s));
  }
  bool fsm() const { return !states_.empty(); }

  std::string gate(const std::string &n, GateKind k,
                   std::vector<std::string> ops) {
    b_.gate(n, k, std::move(ops));
    if (fsm())
      states_.back().active.push_back(n);
    return n;
  }
  std::string AND(const std::string &n, const std::string &a,
                  const std::string &b) {
    return gate(n, GateKind::And, {a, b});
  }
  std::string XOR(const std::string &n, const std::string &a,
                  const std::string &b) {
    return gate(n, GateKind::Xor, {a, b});
  }
  std::string NOT(const std::string &n, const std::string &a) {
    return gate(n, GateKind::Not, {a});
  }
  std::string REG(const std::string &n, const std::string &a) {
    gate(n, GateKind::Reg, {a});
    if (fsm())
      states_.back().reg_writes.push_back(n);
    return n;
  }
  /// MUX(alt0, alt1, sel) bound to `v` in the current state.
  std::string pick(const std::string &n, const std::string &alt0,
                   const std::string &alt1, const std::string &sel, int v) {
    gate(n, GateKind::Mux, {alt0, alt1, sel});
    states_.back().mux_bindings.emplace_back(n, v);
    return n;
  }
  void output(const std::string &n) { b_.output(n); }

  Bench finish(BenchSpec spec) {
    for (auto &s : states_)
      b_.state(s);
    Circuit c = b_.build();
    InputLabeling l = InputLabeling::create(c, roles_);
    return {std::move(spec), std::move(c), std::move(l)};
  }

private:
  CircuitBuilder b_;
  std::vector<std::pair<std::string, Role>> roles_;
  std::vector<FsmStateSpec> states_;
};

// Select inputs of two multiplier units shared by both share domains.
struct SharedUnits {
  std::string cross_sel;
  std::string inner_sel;
  std::string tag; // MUX name prefix
};

// Operand `alts[v]` of a unit, through a MUX when the unit is shared.
std::string operand(Gen &g, const std::optional<SharedUnits> &u,
                    const std::string &sel, const std::string &name,
                    const Pair &alts, int v) {
  if (!u)
    return alts[static_cast<std::size_t>(v)];
  return g.pick(u->tag + name + std::to_string(v), alts[0], alts[1], sel, v);
}

struct DomNames {
  std::string cross, inner, masked, masked_q, sum, out;
};

DomNames dom_names(const std::string &p, int i) {
  std::string s = std::to_string(i);
  return {p + "x" + s, p + "i" + s, p + "m" + s,
          p + "mq" + s, p + "s" + s, p + "c" + s};
}

// Share domain i of a DOM product: REG(REG(a_i b_j ^ r) ^ a_i b_i), j = 1 - i.
std::string dom_domain(Gen &g, int i, const Pair &a, const Pair &b,
                       const std::string &r, const DomNames &n,
                       const std::optional<SharedUnits> &u = std::nullopt) {
  std::string xa = u ? operand(g, u, u->cross_sel, "xa", a, i) : a[i];
  std::string xb = u ? operand(g, u, u->cross_sel, "xb", {b[1], b[0]}, i)
                     : b[1 - i];
  std::string ia = u ? operand(g, u, u->inner_sel, "ia", a, i) : a[i];
  std::string ib = u ? operand(g, u, u->inner_sel, "ib", b, i) : b[i];
  g.AND(n.cross, xa, xb);
  g.AND(n.inner, ia, ib);
  g.XOR(n.masked, n.cross, r);
  g.REG(n.masked_q, n.masked);
  g.XOR(n.sum, n.masked_q, n.inner);
  return g.REG(n.out, n.sum);
}

Pair dom(Gen &g, const std::string &p, const Pair &a, const Pair &b,
         const std::string &r) {
  return {dom_domain(g, 0, a, b, r, dom_names(p, 0)),
          dom_domain(g, 1, a, b, r, dom_names(p, 1))};
}

// b_i ^ q, registered.
std::string refresh_share(Gen &g, const std::string &p, int i,
                          const std::string &bi, const std::string &q) {
  std::string s = std::to_string(i);
  return g.REG(p + "q" + s, g.XOR(p + "f" + s, bi, q));
}

Pair refresh(Gen &g, const std::string &p, const Pair &b,
             const std::string &q) {
  return {refresh_share(g, p, 0, b[0], q), refresh_share(g, p, 1, b[1], q)};
}

Pair hpc1(Gen &g, const std::string &p, const Pair &a, const Pair &b,
          const std::string &q, const std::string &r) {
  return dom(g, p, a, refresh(g, p + "b", b, q), r);
}

// HPC2 share domain i, with rq = REG(r) shared by both domains:
// REG(REG(a_i b_i) ^ REG(~a_i rq) ^ REG(a_i REG(b_j ^ r))).
std::string hpc2_domain(Gen &g, const std::string &p, int i, const Pair &a,
                        const Pair &b, const std::string &r,
                        const std::string &rq,
                        const std::optional<SharedUnits> &u = std::nullopt) {
  std::string s = std::to_string(i);
  int j = 1 - i;
  std::string bq = g.REG(p + "bq" + std::to_string(j),
                         g.XOR(p + "br" + std::to_string(j), b[j], r));
  std::string ia = u ? operand(g, u, u->inner_sel, "ia", a, i) : a[i];
  std::string ib = u ? operand(g, u, u->inner_sel, "ib", b, i) : b[i];
  std::string xa = u ? operand(g, u, u->cross_sel, "xa", a, i) : a[i];
  std::string ab = g.REG(p + "abq" + s, g.AND(p + "ab" + s, ia, ib));
  std::string na = g.NOT(p + "na" + s, a[i]);
  std::string nr = g.REG(p + "nrq" + s, g.AND(p + "nr" + s, na, rq));
  std::string ar = g.REG(p + "arq" + s, g.AND(p + "ar" + s, xa, bq));
  std::string t = g.XOR(p + "t" + s, ab, nr);
  return g.REG(p + "c" + s, g.XOR(p + "s" + s, t, ar));
}

Pair hpc2(Gen &g, const std::string &p, const Pair &a, const Pair &b,
          const std::string &r) {
  std::string rq = g.REG(p + "rq", r);
  return {hpc2_domain(g, p, 0, a, b, r, rq), hpc2_domain(g, p, 1, a, b, r, rq)};
}

BenchSpec spec_for(const std::string &name) {
  for (const auto &s : bench_catalog())
    if (s.name == name)
      return s;
  throw Error(ErrorKind::Usage, "unknown bench '" + name + "'");
}

// Cascade of two masked products, y = (a*b)*d. The first product runs one
// share domain per state on shared multiplier units.
Bench cascade_dom() {
  Gen g;
  Pair a = g.shares("a", "A"), b = g.shares("b", "B"), d = g.shares("d", "D");
  std::string r0 = g.mask("r0"), r1 = g.mask("r1");
  std::string u1 = g.pub("sel_u1"), u2 = g.pub("sel_u2");
  std::string u3 = g.pub("sel_u3"), u4 = g.pub("sel_u4");
  SharedUnits g1{u1, u2, "m1"}, g2{u3, u4, "m2"};
  Pair c = {"c0", "c1"};
  g.state("STATE0");
  dom_domain(g, 0, a, b, r0,
             {"temp0", "temp1", "temp2", "temp2_q", "reg1", "c0"}, g1);
  g.state("STATE1");
  dom_domain(g, 1, a, b, r0,
             {"temp3", "temp4", "temp5", "temp5_q", "reg4", "c1"}, g1);
  g.state("STATE2");
  dom_domain(g, 1, c, d, r1,
             {"temp6", "temp7", "temp8", "temp8_q", "reg2", "y1"}, g2);
  g.state("STATE3");
  dom_domain(g, 0, c, d, r1,
             {"temp9", "temp10", "temp11", "temp11_q", "reg3", "y0"}, g2);
  g.output("y0");
  g.output("y1");
  return g.finish(spec_for("cascade-dom"));
}

// Two-state schedule, one whole gadget per state, with the second gadget's
// domain-0 masking reassociated.
Bench cascade_dom_flawed() {
  Gen g;
  Pair a = g.shares("a", "A"), b = g.shares("b", "B"), d = g.shares("d", "D");
  std::string r1 = g.mask("r1"), r2 = g.mask("r2");
  g.state("STATE0");
  Pair c = dom(g, "g1", a, b, r1);
  g.state("STATE1");
  dom_domain(g, 0, c, d, r2, {"p0", "p1", "i0", "i0_q", "s0", "y0"});
  dom_domain(g, 1, c, d, r2, {"p2", "p3", "i1", "i1_q", "s1", "y1"});
  g.output("y0");
  g.output("y1");
  Bench bench = g.finish(spec_for("cascade-dom"));
  bench.spec.flawed = true;
  bench.spec.states = 2;
  bench.circuit = inject_reassociation(bench.circuit, "s0", ReassocStyle::Balance);
  return bench;
}

Bench cascade_hpc1(std::size_t states) {
  Gen g;
  Pair a = g.shares("a", "A"), b = g.shares("b", "B"), d = g.shares("d", "D");
  std::string q1 = g.mask("q1"), r1 = g.mask("r1");
  std::string q2 = g.mask("q2"), r2 = g.mask("r2");
  SharedUnits g1{g.pub("sel_u1"), g.pub("sel_u2"), "m1"};
  g.state("STATE0");
  Pair bq = refresh(g, "g1b", b, q1);
  if (states == 4)
    g.state("STATE1");
  dom_domain(g, 0, a, bq, r1, dom_names("g1", 0), g1);
  g.state(states == 4 ? "STATE2" : "STATE1");
  dom_domain(g, 1, a, bq, r1, dom_names("g1", 1), g1);
  g.state(states == 4 ? "STATE3" : "STATE2");
  Pair y = hpc1(g, "g2", {"g1c0", "g1c1"}, d, q2, r2);
  g.output(y[0]);
  g.output(y[1]);
  return g.finish(spec_for(states == 4 ? "cascade-hpc1-4state" : "cascade-hpc1"));
}

Bench cascade_hpc2() {
  Gen g;
  Pair a = g.shares("a", "A"), b = g.shares("b", "B"), d = g.shares("d", "D");
  std::string r1 = g.mask("r1"), r2 = g.mask("r2");
  SharedUnits g1{g.pub("sel_u1"), g.pub("sel_u2"), "m1"};
  g.state("STATE0");
  std::string rq = g.REG("g1rq", r1);
  hpc2_domain(g, "g1", 0, a, b, r1, rq, g1);
  g.state("STATE1");
  hpc2_domain(g, "g1", 1, a, b, r1, rq, g1);
  g.state("STATE2");
  Pair y = hpc2(g, "g2", {"g1c0", "g1c1"}, d, r2);
  g.output(y[0]);
  g.output(y[1]);
  return g.finish(spec_for("cascade-hpc2"));
}

// Operands refreshed with one random each, then a DOM core.
Bench cascade_comar() {
  Gen g;
  Pair a = g.shares("a", "A"), b = g.shares("b", "B"), d = g.shares("d", "D");
  std::string qa = g.mask("qa"), qb = g.mask("qb"), r1 = g.mask("r1");
  std::string qc = g.mask("qc"), qd = g.mask("qd"), r2 = g.mask("r2");
  SharedUnits g1{g.pub("sel_u1"), g.pub("sel_u2"), "m1"};
  g.state("STATE0");
  Pair aq{refresh_share(g, "g1a", 0, a[0], qa), "g1aq1"};
  Pair bq = refresh(g, "g1b", b, qb);
  dom_domain(g, 0, aq, bq, r1, dom_names("g1", 0), g1);
  g.state("STATE1");
  refresh_share(g, "g1a", 1, a[1], qa);
  dom_domain(g, 1, aq, bq, r1, dom_names("g1", 1), g1);
  g.state("STATE2");
  Pair cq = refresh(g, "g2a", {"g1c0", "g1c1"}, qc);
  Pair dq = refresh(g, "g2b", d, qd);
  Pair y = dom(g, "g2", cq, dq, r2);
  g.output(y[0]);
  g.output(y[1]);
  return g.finish(spec_for("cascade-comar"));
}

} // namespace

const std::vector<BenchSpec> &bench_catalog() {
  static const std::vector<BenchSpec> catalog = {
      {"worked-example", Scheme::DOM, Topology::WorkedExample, 0, false, false},
      {"dom-v1", Scheme::DOM, Topology::SingleGadget, 0, false, false},
      {"dom-v2", Scheme::DOM, Topology::SingleGadget, 0, true, false},
      {"dom-v3", Scheme::DOM, Topology::SingleGadget, 2, false, false},
      {"dom-v4", Scheme::DOM, Topology::SingleGadget, 2, true, false},
      {"cascade-dom", Scheme::DOM, Topology::Cascade, 4, true, false},
      {"cascade-hpc1", Scheme::HPC1, Topology::Cascade, 3, true, false},
      {"cascade-hpc1-4state", Scheme::HPC1, Topology::Cascade, 4, true, false},
      {"cascade-hpc2", Scheme::HPC2, Topology::Cascade, 3, true, false},
      {"cascade-comar", Scheme::COMAR, Topology::Cascade, 3, true, false},
      {"present-dom", Scheme::DOM, Topology::PresentSbox, 2, true, false},
      {"present-hpc1", Scheme::HPC1, Topology::PresentSbox, 2, true, false},
  };
  return catalog;
}

Bench generate(std::string_view name, bool flawed) {
  std::string n(name);
  spec_for(n); // validates the name
  if (flawed && n != "cascade-dom")
    throw Error(ErrorKind::Usage, "--flaw reassoc is only defined for cascade-dom");
  if (n == "worked-example")
    return gen_worked_example();
  if (n.rfind("dom-v", 0) == 0)
    return gen_dom_and(n.back() - '0');
  if (n == "cascade-dom")
    return gen_cascade(Scheme::DOM, flawed);
  if (n == "cascade-hpc1")
    return gen_cascade(Scheme::HPC1);
  if (n == "cascade-hpc1-4state")
    return gen_cascade(Scheme::HPC1, false, 4);
  if (n == "cascade-hpc2")
    return gen_cascade(Scheme::HPC2);
  if (n == "cascade-comar")
    return gen_cascade(Scheme::COMAR);
  if (n == "present-dom")
    return gen_present_sbox(Scheme::DOM);
  return gen_present_sbox(Scheme::HPC1);
}

Bench gen_worked_example() {
  Gen g;
  g.input("s_m", Role::make_share("1", 1));
  g.mask("m1");
  g.input("m_s", Role::make_share("1", 2));
  g.pub("p1");
  g.XOR("G1", "s_m", "m1");
  g.AND("G2", "m_s", "p1");
  g.XOR("G3", "G1", "G2");
  g.gate("q", GateKind::Buf, {"G3"});
  g.output("q");
  return g.finish(spec_for("worked-example"));
}

Bench gen_dom_and(int version) {
  if (version < 1 || version > 4)
    throw Error(ErrorKind::Usage,
                "DOM version must be 1..4, got " + std::to_string(version));
  Gen g;
  Pair a = g.shares("a", "A"), b = g.shares("b", "B");
  std::string z = g.mask("z");
  const bool reg = version == 2 || version == 4;
  auto held = [&](const std::string &n) {
    return reg ? g.REG(n + "_q", n) : n;
  };
  if (version <= 2) {
    g.AND("p1", a[0], b[0]);
    g.AND("p2", a[0], b[1]);
    g.AND("p3", a[1], b[0]);
    g.AND("p4", a[1], b[1]);
    g.XOR("i1", "p2", z);
    g.XOR("i2", "p3", z);
    g.XOR("y0", held("i1"), held("p1"));
    g.XOR("y1", held("i2"), held("p4"));
  } else {
    // Two AND units time-shared by the share domains: the cross unit takes
    // (a0, b1) then (a1, b0), the inner unit (a0, b0) then (a1, b1).
    std::string sx = g.pub("sel_x"), si = g.pub("sel_i");
    SharedUnits u{sx, si, "u"};
    auto half = [&](int i) {
      std::string s = std::to_string(i);
      std::string xa = operand(g, u, sx, "xa", a, i);
      std::string xb = operand(g, u, sx, "xb", {b[1], b[0]}, i);
      std::string ia = operand(g, u, si, "ia", a, i);
      std::string ib = operand(g, u, si, "ib", b, i);
      std::string cross = g.AND(i == 0 ? "p2" : "p3", xa, xb);
      std::string inner = g.AND(i == 0 ? "p1" : "p4", ia, ib);
      std::string m = g.XOR(i == 0 ? "i1" : "i2", cross, z);
      return std::pair(m, inner);
    };
    g.state("S0");
    auto [m0, in0] = half(0);
    if (!reg) {
      g.XOR("y0", m0, in0);
    } else {
      g.REG(m0 + "_q", m0);
      g.REG(in0 + "_q", in0);
    }
    g.state("S1");
    auto [m1, in1] = half(1);
    if (!reg) {
      g.XOR("y1", m1, in1);
    } else {
      g.XOR("y0", m0 + "_q", in0 + "_q");
      g.XOR("y1", g.REG(m1 + "_q", m1), g.REG(in1 + "_q", in1));
    }
  }
  g.output("y0");
  g.output("y1");
  return g.finish(spec_for("dom-v" + std::to_string(version)));
}

Bench gen_cascade(Scheme scheme, bool flawed, std::size_t states) {
  if (flawed && scheme != Scheme::DOM)
    throw Error(ErrorKind::Usage, "only the DOM cascade has a flawed variant");
  switch (scheme) {
  case Scheme::DOM:
    if (states != 0 && states != (flawed ? 2u : 4u))
      break;
    return flawed ? cascade_dom_flawed() : cascade_dom();
  case Scheme::HPC1:
    if (states != 0 && states != 3 && states != 4)
      break;
    return cascade_hpc1(states == 0 ? 3 : states);
  case Scheme::HPC2:
    if (states != 0 && states != 3)
      break;
    return cascade_hpc2();
  case Scheme::COMAR:
    if (states != 0 && states != 3)
      break;
    return cascade_comar();
  }
  throw Error(ErrorKind::Usage, "no " + std::to_string(states) + "-state " +
                                    std::string(to_string(scheme)) +
                                    " cascade");
}

std::array<std::uint8_t, 16> present_sbox_table() {
  return {0xC, 0x5, 0x6, 0xB, 0x9, 0x0, 0xA, 0xD,
          0x3, 0xE, 0xF, 0x8, 0x4, 0x7, 0x1, 0x2};
}

// Depth-2 decomposition with four ANDs:
//   t1 = x1 x2, t2 = (x1^x2) x3, u1 = x0 (t1^t2), u2 = (x0^x1)(x0^x3^t1)
//   y0 = x0^x2^x3^t1, y1 = x1^x3^t2^u1,
//   y2 = ~(x0^x2^x3^t1^u1^u2), y3 = ~(x0^x1^x3^t1^u1)
Bench gen_present_sbox(Scheme scheme) {
  if (scheme != Scheme::DOM && scheme != Scheme::HPC1)
    throw Error(ErrorKind::Usage, "PRESENT S-box is generated for DOM and HPC1");
  const bool h = scheme == Scheme::HPC1;
  Gen g;
  std::array<Pair, 4> x;
  for (int k = 0; k < 4; ++k)
    x[k] = g.shares("x" + std::to_string(k) + "_", "X" + std::to_string(k));
  std::map<std::string, std::string> q;
  for (const char *n : {"t1", "t2", "u1", "u2"}) {
    g.mask(std::string("r_") + n);
    if (h)
      q[n] = g.mask(std::string("q_") + n);
  }
  auto mult = [&](const std::string &p, const Pair &a, const Pair &b) {
    return h ? hpc1(g, p, a, b, q[p], "r_" + p) : dom(g, p, a, b, "r_" + p);
  };
  // One XOR unit computes (x1^x2)_0 in S0 and (x0^x1)_1 in S1.
  std::string sel = g.pub("sel_x");
  auto shared_xor = [&](int v) {
    std::string l = g.pick("ux_a" + std::to_string(v), x[1][0], x[1][1], sel, v);
    std::string r = g.pick("ux_b" + std::to_string(v), x[2][0], x[0][1], sel, v);
    return g.XOR("ux" + std::to_string(v), l, r);
  };

  g.state("S0");
  Pair x12 = {g.REG("x12_0", shared_xor(0)),
              g.REG("x12_1", g.XOR("x12f1", x[1][1], x[2][1]))};
  Pair t1 = mult("t1", x[1], x[2]);
  Pair t2 = mult("t2", x12, x[3]);

  g.state("S1");
  Pair x01 = {g.REG("x01_0", g.XOR("x01f0", x[0][0], x[1][0])),
              g.REG("x01_1", shared_xor(1))};
  Pair t12, x03t;
  for (int i = 0; i < 2; ++i) {
    std::string s = std::to_string(i);
    t12[i] = g.REG("t12_" + s, g.XOR("t12f" + s, t1[i], t2[i]));
    x03t[i] = g.REG("x03t_" + s,
                    g.XOR("x03tf" + s, g.XOR("x03f" + s, x[0][i], x[3][i]),
                          t1[i]));
  }
  Pair u1 = mult("u1", x[0], t12);
  Pair u2 = mult("u2", x01, x03t);
  for (int i = 0; i < 2; ++i) {
    std::string s = "_" + std::to_string(i);
    std::string e023 = g.XOR("e023" + s,
                             g.XOR("e02" + s, x[0][i], x[2][i]), x[3][i]);
    std::string y0 = g.XOR("y0" + s, e023, t1[i]);
    std::string e13 = g.XOR("e13" + s, x[1][i], x[3][i]);
    g.XOR("y1" + s, g.XOR("e13t" + s, e13, t2[i]), u1[i]);
    std::string v2 = g.XOR("v2" + s, g.XOR("v2a" + s, y0, u1[i]), u2[i]);
    std::string v3 =
        g.XOR("v3" + s,
              g.XOR("v3b" + s, g.XOR("v3a" + s, x[0][i], x[1][i]), x[3][i]),
              g.XOR("v3c" + s, t1[i], u1[i]));
    // The affine constant lands on share 0 only.
    GateKind k = i == 0 ? GateKind::Not : GateKind::Buf;
    g.gate("y2" + s, k, {v2});
    g.gate("y3" + s, k, {v3});
  }
  for (const char *y : {"y0", "y1", "y2", "y3"})
    for (int i = 0; i < 2; ++i)
      g.output(std::string(y) + "_" + std::to_string(i));
  return g.finish(spec_for(h ? "present-hpc1" : "present-dom"));
}

Circuit inject_reassociation(const Circuit &c, std::string_view target,
                             ReassocStyle style) {
  auto fail = [&](const std::string &why) -> Error {
    return Error(ErrorKind::StructureNotFound,
                 "cannot reassociate '" + std::string(target) + "': " + why);
  };
  auto t = c.find(target);
  if (!t)
    throw fail("no such net");
  const Node &top = c.node(*t);
  if (top.kind != GateKind::Xor)
    throw fail("not an XOR");
  // Find the masking XOR (cross ^ r) among the operands, maybe behind a REG.
  std::optional<NetId> masking;
  std::size_t side = 0;
  for (std::size_t k = 0; k < 2 && !masking; ++k) {
    NetId o = top.operands[k];
    if (c.node(o).kind == GateKind::Reg)
      o = c.node(o).operands[0];
    const Node &n = c.node(o);
    if (n.kind != GateKind::Xor)
      continue;
    bool has_input = false;
    for (NetId op : n.operands)
      has_input = has_input || c.node(op).kind == GateKind::Input;
    if (has_input) {
      masking = o;
      side = k;
    }
  }
  if (!masking)
    throw fail("no operand of the form (x ^ r) with r a primary input");
  const Node &m = c.node(*masking);
  std::size_t r_pos = c.node(m.operands[1]).kind == GateKind::Input ? 1 : 0;
  std::string r = c.name(m.operands[r_pos]);
  std::string cross = c.name(m.operands[1 - r_pos]);
  std::string inner = c.name(top.operands[1 - side]);
  std::string held = c.name(top.operands[side]); // masking XOR or its REG

  std::map<NetId, std::vector<std::string>> ops;
  if (style == ReassocStyle::Swap) {
    ops[*masking] = {inner, r};
    ops[*t] = {held, cross};
  } else {
    ops[*masking] = {cross, inner};
    ops[*t] = {held, r};
  }
  CircuitBuilder b;
  for (NetId id = 0; id < c.size(); ++id) {
    const Node &n = c.node(id);
    if (n.kind == GateKind::Input) {
      b.input(n.name);
      continue;
    }
    auto it = ops.find(id);
    std::vector<std::string> names;
    if (it != ops.end())
      names = it->second;
    else
      for (NetId op : n.operands)
        names.push_back(c.name(op));
    b.gate(n.name, n.kind, std::move(names));
  }
  for (NetId o : c.outputs())
    b.output(c.name(o));
  if (c.fsm()) {
    b.enable_fsm();
    for (const FsmState &st : c.fsm()->states) {
      FsmStateSpec s;
      s.name = st.name;
      for (NetId a : st.active)
        s.active.push_back(c.name(a));
      for (NetId rw : st.reg_writes)
        s.reg_writes.push_back(c.name(rw));
      for (const MuxBinding &mb : st.mux_bindings)
        s.mux_bindings.emplace_back(c.name(mb.mux), mb.value);
      b.state(std::move(s));
    }
  }
  return b.build();
}

} // namespace maskverif
