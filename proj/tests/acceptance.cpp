// Acceptance checks, one line per criterion. Usage: acceptance <maskverif-cli>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "maskverif/labels.hpp"
#include "maskverif/oracle.hpp"
#include "maskverif/pipeline.hpp"
#include "support.hpp"

using namespace maskverif;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string &what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

std::string yn(bool secure) { return secure ? "secure" : "insecure"; }

const std::vector<std::string> kSix = {"cascade-dom",  "cascade-comar",
                                       "cascade-hpc1", "cascade-hpc2",
                                       "present-dom",  "present-hpc1"};

Outcome criterion1() {
  Outcome o;
  Bench b = gen_worked_example();
  auto t0 = Clock::now();
  Verdict s = verify(b.circuit, b.labels, Model::Stable, 1);
  Verdict t = verify(b.circuit, b.labels, Model::Transient, 1);
  LabelMap lm = propagate(b.circuit, b.labels);
  double dt = seconds_since(t0);
  const VarTable &v = b.labels.vars();
  Monomial sec = v.monomial({{VarKind::Secret, "1"}});
  Monomial ms = v.monomial({{VarKind::Mask, "1#1"}});
  Monomial m1 = v.monomial({{VarKind::Mask, "m1"}});
  Monomial p1 = v.monomial({{VarKind::Public, "p1"}});
  NetId g3 = b.circuit.at("G3");
  o.require(s.secure, "stable verdict is insecure");
  o.require(!t.secure, "transient verdict is secure");
  o.require(!t.leaks.empty() && b.circuit.name(t.leaks.front().net) == "G3",
            "first transient leak is not at G3");
  o.require(lm.stable[g3] == CorrelationSet{sec ^ ms ^ m1, sec ^ m1,
                                            sec ^ ms ^ m1 ^ p1, sec ^ m1 ^ p1},
            "stable label of G3 differs");
  o.require(lm.transient[g3].contains(sec) &&
                lm.transient[g3].contains(sec ^ p1),
            "transient label of G3 misses {s} or {s,p1}");
  o.require(dt < 0.010, "runtime " + std::to_string(dt) + " s");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const bool want[4][2] = {{true, false}, {true, true}, {false, false},
                           {false, false}};
  for (int v = 1; v <= 4; ++v) {
    Bench b = gen_dom_and(v);
    Report r = run_monolithic(b.circuit, b.labels, {});
    bool s = r.overall.at(Model::Stable), t = r.overall.at(Model::Transient);
    o.require(s == want[v - 1][0] && t == want[v - 1][1],
              "dom-v" + std::to_string(v) + " gave " + yn(s) + "/" + yn(t));
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (const std::string &n : kSix) {
    Bench b = generate(n);
    Report mono = run_monolithic(b.circuit, b.labels, {});
    o.require(!mono.overall.at(Model::Stable) &&
                  !mono.overall.at(Model::Transient),
              n + " monolithic not insecure/insecure");
    Report sw = run_statewise(b.circuit, b.labels, {});
    o.require(sw.overall.at(Model::Stable) && sw.overall.at(Model::Transient),
              n + " statewise " + yn(sw.overall.at(Model::Stable)) + "/" +
                  yn(sw.overall.at(Model::Transient)));
    for (const StateEntry &s : sw.states) {
      double dt = 0;
      for (const auto &[m, res] : s.results)
        dt += res.time_s;
      o.require(dt < 2.0, n + " " + s.name + " took " + std::to_string(dt) + " s");
    }
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (const std::string &n : kSix) {
    Bench b = generate(n);
    Report r = run_statewise(b.circuit, b.labels, {});
    for (const StateEntry &s : r.states)
      o.require(s.results.at(Model::Stable).secure &&
                    s.results.at(Model::Transient).secure,
                n + " " + s.name + " is not True/True");
    for (Model m : {Model::Stable, Model::Transient})
      for (std::size_t i = 1; i < r.states.size(); ++i) {
        const Metrics &a = r.states[i - 1].results.at(m).metrics;
        const Metrics &z = r.states[i].results.at(m).metrics;
        o.require(a.vars <= z.vars && a.assertions <= z.assertions &&
                      a.digraph_nodes <= z.digraph_nodes,
                  n + " metrics drop at " + r.states[i].name);
      }
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  Bench b = generate("cascade-dom", true);
  Report r = run_statewise(b.circuit, b.labels, {});
  o.require(r.states.size() >= 2, "fewer than two states");
  if (r.states.size() < 2)
    return o;
  for (Model m : {Model::Stable, Model::Transient}) {
    o.require(r.states[0].results.at(m).secure,
              "state 1 " + std::string(to_string(m)) + " insecure");
    o.require(!r.states[1].results.at(m).secure,
              "state 2 " + std::string(to_string(m)) + " secure");
  }
  // leak at a sub-design output: secret present, no mask
  SubDesign sd = extract_subdesign(b.circuit, b.labels, r.states[1].name);
  std::set<std::string> outs;
  for (NetId n : sd.circuit.outputs())
    outs.insert(sd.circuit.name(n));
  bool found = false;
  for (const auto &[m, res] : r.states[1].results)
    for (const ReportLeak &k : res.leaks) {
      if (!outs.count(k.net))
        continue;
      bool secret = false, mask = false;
      for (const std::string &tok : k.monomial) {
        secret = secret || tok.starts_with("s:");
        mask = mask || tok.starts_with("m:");
      }
      found = found || (secret && !mask);
    }
  o.require(found, "no secret-only leak at a state-2 output");
  return o;
}

struct SoundnessCount {
  std::size_t a = 0, b = 0, c = 0, d = 0, fixtures = 0;
  std::vector<std::string> where;
};

void soundness(const Circuit &c, const InputLabeling &l, bool unflawed,
               const std::string &tag, SoundnessCount &n) {
  if (c.inputs().size() > kMaxOracleInputs || l.vars().size() > 16)
    return;
  ++n.fixtures;
  LabelMap lm = propagate(c, l);
  Oracle o(c, l);
  for (NetId w = 0; w < c.size(); ++w) {
    if (!o.support(w).subset_of(lm.stable[w]))
      ++n.a;
    if (!lm.stable[w].subset_of(lm.transient[w]))
      ++n.d;
  }
  for (Model m : {Model::Stable, Model::Transient}) {
    Verdict v = verify_labels(c, lm, l.vars(), m, 1);
    std::set<NetId> flagged;
    for (const Leak &k : v.leaks)
      flagged.insert(k.net);
    bool oracle_insecure = false;
    for (NetId w = 0; w < c.size(); ++w) {
      if (c.node(w).kind == GateKind::Input)
        continue;
      bool leak = o.leak(m, w);
      oracle_insecure = oracle_insecure || leak;
      if (leak && !flagged.count(w))
        ++n.b;
    }
    if (unflawed && !v.secure && !oracle_insecure) {
      ++n.c;
      n.where.push_back(tag + " " + std::string(to_string(m)));
    }
  }
}

Outcome criterion6() {
  Outcome o;
  SoundnessCount n;
  std::mt19937 rng(6);
  for (int i = 0; i < 300; ++i) {
    support::Fixture f = support::random_fixture(rng);
    soundness(f.c, f.l, false, "random", n);
  }
  for (const std::string &name : kSix) {
    Bench b = generate(name);
    for (const SubDesign &sd : split_all(b.circuit, b.labels))
      soundness(lower_mux(sd.circuit), sd.labeling, true,
                name + "/" + sd.state, n);
  }
  Bench bad = generate("cascade-dom", true);
  for (const SubDesign &sd : split_all(bad.circuit, bad.labels))
    soundness(lower_mux(sd.circuit), sd.labeling, false, "flawed", n);
  o.require(n.a == 0, "(a) " + std::to_string(n.a) + " support violations");
  o.require(n.b == 0, "(b) " + std::to_string(n.b) + " missed oracle leaks");
  std::string fa;
  for (const std::string &w : n.where)
    fa += " " + w + ";";
  o.require(n.c == 0, "(c) " + std::to_string(n.c) + " false alarms:" + fa);
  o.require(n.d == 0, "(d) " + std::to_string(n.d) + " stable/transient violations");
  o.notes.push_back(std::to_string(n.fixtures) + " fixtures");
  return o;
}

Outcome criterion7() {
  Outcome o;
  for (const BenchSpec &s : bench_catalog()) {
    if (s.states == 0)
      continue;
    Bench b = generate(s.name);
    std::string cov = support::coverage_mismatch(b.circuit, b.labels);
    o.require(cov.empty(), s.name + ": " + cov);
    std::string fid = support::fidelity_mismatch(b.circuit, b.labels);
    o.require(fid.empty(), s.name + ": " + fid);
  }
  return o;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion8(const std::string &cli) {
  Outcome o;
  if (cli.empty()) {
    o.require(false, "no CLI path given");
    return o;
  }
  fs::path dir = fs::temp_directory_path() /
                 ("maskverif-accept-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::vector<std::string> stems;
  auto run = [](const std::string &cmd) {
    return std::system((cmd + " >/dev/null 2>&1").c_str());
  };
  for (const BenchSpec &s : bench_catalog()) {
    run(cli + " gen --bench " + s.name + " -o " + dir.string());
    stems.push_back(s.name);
  }
  run(cli + " gen --bench cascade-dom --flaw reassoc -o " + dir.string());
  stems.push_back("cascade-dom-reassoc");
  for (const std::string &stem : stems)
    for (const char *mode : {"statewise", "monolithic"}) {
      std::string base = (dir / stem).string();
      std::string cmd = cli + " verify --netlist " + base + ".net --labels " +
                        base + ".lbl --mode " + mode + " --json ";
      run(cmd + base + ".a.json");
      run(cmd + base + ".b.json");
      std::string a = slurp(base + ".a.json"), b = slurp(base + ".b.json");
      o.require(!a.empty() && a == b, stem + " " + mode + " differs");
    }
  fs::remove_all(dir);
  return o;
}

} // namespace

int main(int argc, char **argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  struct Row {
    int id;
    const char *title;
    std::function<Outcome()> run;
  };
  std::vector<Row> rows = {
      {1, "worked example verdicts and labels", criterion1},
      {2, "DOM v1-v4 monolithic verdicts", criterion2},
      {3, "six benchmarks: monolithic insecure, statewise secure", criterion3},
      {4, "per-state True/True and metric monotonicity", criterion4},
      {5, "reassociated cascade: state 1 secure, state 2 insecure", criterion5},
      {6, "oracle soundness properties (a)-(d)", criterion6},
      {7, "state coverage and sub-design fidelity", criterion7},
      {8, "byte-identical JSON across runs", [&] { return criterion8(cli); }},
  };
  int failed = 0;
  for (const Row &r : rows) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = r.run();
    } catch (const std::exception &e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failed += o.pass ? 0 : 1;
    std::cout << "criterion " << r.id << ": " << (o.pass ? "PASS" : "FAIL")
              << "  " << r.title;
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << seconds_since(t0);
    std::cout << " (" << t.str() << " s)\n";
    for (const std::string &n : o.notes)
      std::cout << "    " << n << "\n";
  }
  std::cout << (rows.size() - static_cast<std::size_t>(failed)) << "/"
            << rows.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
