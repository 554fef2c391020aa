#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "maskverif/labels.hpp"
#include "maskverif/oracle.hpp"
#include "maskverif/pipeline.hpp"
#include "support.hpp"

using namespace maskverif;
using support::Fixture;

namespace {

constexpr int kTrials = 300;

CorrelationSet random_set(std::mt19937 &rng, int bits) {
  std::uniform_int_distribution<Monomial> mono(0, (Monomial{1} << bits) - 1);
  std::vector<Monomial> ms(std::uniform_int_distribution<int>(0, 6)(rng));
  for (auto &m : ms)
    m = mono(rng);
  return CorrelationSet(std::move(ms));
}

// Every leak the oracle sees on `net` must be seen by the label engine.
void check_soundness(const Circuit &c, const InputLabeling &l) {
  if (c.inputs().size() > kMaxOracleInputs || l.vars().size() > 16)
    return;
  LabelMap lm = propagate(c, l);
  Oracle o(c, l);
  for (NetId n = 0; n < c.size(); ++n) {
    CAPTURE(c.name(n));
    // stable label over-approximates the exact spectrum
    CHECK(o.support(n).subset_of(lm.stable[n]));
    CHECK(lm.stable[n].subset_of(lm.transient[n]));
  }
  for (Model m : {Model::Stable, Model::Transient}) {
    Verdict v = verify_labels(c, lm, l.vars(), m, 1);
    std::set<NetId> flagged;
    for (const Leak &k : v.leaks)
      flagged.insert(k.net);
    for (NetId n = 0; n < c.size(); ++n) {
      if (c.node(n).kind == GateKind::Input)
        continue;
      if (o.leak(m, n)) {
        CAPTURE(to_string(m));
        CAPTURE(c.name(n));
        CHECK(flagged.count(n) == 1);
      }
    }
  }
}

} // namespace

TEST_CASE("monomial algebra laws") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    Monomial a = rng(), b = rng(), c = rng();
    CHECK(mono_mul(a, b) == mono_mul(b, a));
    CHECK(mono_mul(mono_mul(a, b), c) == mono_mul(a, mono_mul(b, c)));
    CHECK(mono_mul(a, kPhi) == a);
    CHECK(mono_mul(a, a) == kPhi);
  }
}

TEST_CASE("set product laws") {
  std::mt19937 rng(2);
  for (int i = 0; i < kTrials; ++i) {
    auto a = random_set(rng, 6), b = random_set(rng, 6), c = random_set(rng, 6);
    CHECK(set_product(a, b, false) == set_product(b, a, false));
    CHECK(set_product(set_product(a, b, false), c, false) ==
          set_product(a, set_product(b, c, false), false));
    CHECK(set_product(a, b, true) == set_product(b, a, true));
    // augmentation only adds monomials
    CHECK(set_product(a, b, false).subset_of(set_product(a, b, true)));
    if (!b.empty())
      CHECK(a.subset_of(set_product(a, b, true)));
  }
}

TEST_CASE("text and json round-trips on random circuits") {
  std::mt19937 rng(3);
  for (int i = 0; i < kTrials; ++i) {
    Fixture f = support::random_fixture(rng, true);
    std::string text = dump_netlist(f.c);
    CHECK(parse_netlist(text) == f.c);
    CHECK(import_structural_json(export_structural_json(f.c)) == f.c);
    CHECK(parse_labels(f.l.dump(), f.c).entries() == f.l.entries());
  }
}

TEST_CASE("lower_mux preserves every truth table") {
  std::mt19937 rng(4);
  for (int i = 0; i < kTrials; ++i) {
    Fixture f = support::random_fixture(rng, true);
    Circuit low = lower_mux(f.c);
    auto t0 = simulate_all(f.c), t1 = simulate_all(low);
    for (NetId n = 0; n < f.c.size(); ++n)
      CHECK(t0[n] == t1[low.at(f.c.name(n))]);
  }
}

TEST_CASE("label engine is sound on random circuits") {
  std::mt19937 rng(5);
  for (int i = 0; i < kTrials; ++i) {
    CAPTURE(i);
    Fixture f = support::random_fixture(rng);
    check_soundness(f.c, f.l);
  }
}

TEST_CASE("label engine is sound on every benchmark unit") {
  for (const BenchSpec &s : bench_catalog()) {
    CAPTURE(s.name);
    Bench b = generate(s.name);
    if (b.circuit.fsm()) {
      for (const SubDesign &sd : split_all(b.circuit, b.labels))
        check_soundness(lower_mux(sd.circuit), sd.labeling);
    }
    std::vector<std::string> sel = mux_select_inputs(b.circuit);
    check_soundness(lower_mux(b.circuit),
                    b.labels.with_public(b.circuit, sel));
  }
  Bench bad = generate("cascade-dom", true);
  for (const SubDesign &sd : split_all(bad.circuit, bad.labels))
    check_soundness(lower_mux(sd.circuit), sd.labeling);
}

TEST_CASE("reassociation keeps the function") {
  for (const char *n : {"y0", "y1"}) {
    for (auto style : {ReassocStyle::Swap, ReassocStyle::Balance}) {
      Bench b = gen_dom_and(1);
      Circuit c = inject_reassociation(b.circuit, n, style);
      auto t0 = simulate_all(b.circuit), t1 = simulate_all(c);
      for (NetId o : b.circuit.outputs())
        CHECK(t0[o] == t1[c.at(b.circuit.name(o))]);
    }
  }
}

TEST_CASE("state coverage and sub-design fidelity") {
  for (const BenchSpec &s : bench_catalog()) {
    if (s.states == 0)
      continue;
    CAPTURE(s.name);
    Bench b = generate(s.name);
    CHECK(support::coverage_mismatch(b.circuit, b.labels) == "");
    CHECK(support::fidelity_mismatch(b.circuit, b.labels) == "");
  }
  Bench bad = generate("cascade-dom", true);
  CHECK(support::coverage_mismatch(bad.circuit, bad.labels) == "");
  CHECK(support::fidelity_mismatch(bad.circuit, bad.labels) == "");
}

TEST_CASE("statewise secure implies every sub-design wire passes") {
  for (const BenchSpec &s : bench_catalog()) {
    if (s.states == 0)
      continue;
    CAPTURE(s.name);
    Bench b = generate(s.name);
    Report r = run_statewise(b.circuit, b.labels, {});
    auto sds = split_all(b.circuit, b.labels);
    for (std::size_t i = 0; i < sds.size(); ++i)
      for (Model m : {Model::Stable, Model::Transient}) {
        if (!r.states[i].results.at(m).secure)
          continue;
        Circuit low = lower_mux(sds[i].circuit);
        InputLabeling l = sds[i].labeling;
        LabelMap lm = propagate(low, l);
        for (NetId n = 0; n < low.size(); ++n) {
          if (low.node(n).kind == GateKind::Input)
            continue;
          CHECK(check_leak(lm.of(m, n), l.vars()).empty());
        }
      }
  }
}
