#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "maskverif/benchgen.hpp"
#include "maskverif/pipeline.hpp"

using namespace maskverif;

namespace {

bool secure(const Report &r, Model m) { return r.overall.at(m); }

} // namespace

TEST_CASE("DOM versions, monolithic") {
  struct Row {
    int v;
    bool s, t;
  };
  for (Row row : {Row{1, true, false}, Row{2, true, true}, Row{3, false, false},
                  Row{4, false, false}}) {
    CAPTURE(row.v);
    Bench b = gen_dom_and(row.v);
    Report r = run_monolithic(b.circuit, b.labels, {});
    CHECK(secure(r, Model::Stable) == row.s);
    CHECK(secure(r, Model::Transient) == row.t);
    CHECK(r.states.size() == 1);
  }
}

TEST_CASE("DOM v3 and v4, statewise") {
  Bench v3 = gen_dom_and(3);
  Report r3 = run_statewise(v3.circuit, v3.labels, {});
  CHECK(secure(r3, Model::Stable));
  CHECK_FALSE(secure(r3, Model::Transient));
  Bench v4 = gen_dom_and(4);
  Report r4 = run_statewise(v4.circuit, v4.labels, {});
  CHECK(r4.secure());
  CHECK_FALSE(r4.first_failure);
}

TEST_CASE("FSM-less design runs as one unit") {
  Bench b = gen_dom_and(2);
  Report r = run_statewise(b.circuit, b.labels, {});
  REQUIRE(r.states.size() == 1);
  CHECK(r.states[0].name == "all");
  CHECK(r.secure());
}

TEST_CASE("mux select inputs") {
  Bench b = gen_dom_and(4);
  auto sel = mux_select_inputs(b.circuit);
  CHECK_FALSE(sel.empty());
  for (const auto &n : sel)
    CHECK(b.labels.role(n).kind == RoleKind::Public);
}

TEST_CASE("metrics grow across cascade states") {
  for (const char *n : {"cascade-dom", "cascade-hpc1", "cascade-hpc1-4state",
                        "cascade-hpc2", "cascade-comar", "present-dom",
                        "present-hpc1"}) {
    CAPTURE(n);
    Bench b = generate(n);
    Report r = run_statewise(b.circuit, b.labels, {});
    for (Model m : {Model::Stable, Model::Transient})
      for (std::size_t i = 1; i < r.states.size(); ++i) {
        const Metrics &a = r.states[i - 1].results.at(m).metrics;
        const Metrics &z = r.states[i].results.at(m).metrics;
        CHECK(a.vars <= z.vars);
        CHECK(a.assertions <= z.assertions);
        CHECK(a.digraph_nodes <= z.digraph_nodes);
      }
  }
}

TEST_CASE("empty sub-design has zero metrics") {
  Circuit c = parse_netlist("");
  InputLabeling l = parse_labels("", c);
  LabelMap lm = propagate(c, l);
  Verdict v = verify_labels(c, lm, l.vars(), Model::Stable, 1);
  CHECK(collect_metrics(c, lm, Model::Stable, v) == Metrics{});
}

TEST_CASE("text report has one SECURE row per state") {
  Bench b = generate("cascade-dom");
  Report r = run_statewise(b.circuit, b.labels, {});
  std::string text = emit_report(r, ReportFormat::Text);
  for (const StateEntry &s : r.states) {
    auto at = text.find("\n" + s.name + " ");
    REQUIRE(at != std::string::npos);
    auto eol = text.find('\n', at + 1);
    CHECK(text.substr(eol - 6, 6) == "SECURE");
  }
  CHECK(text.find("Time(s)") == std::string::npos);
  CHECK(emit_report(r, ReportFormat::Text, true).find("Time(s)") !=
        std::string::npos);
}

TEST_CASE("insecure json names original nets") {
  Bench b = generate("cascade-dom", true);
  RunOptions opt;
  opt.design = "flawed";
  Report r = run_statewise(b.circuit, b.labels, opt);
  auto j = nlohmann::json::parse(emit_report(r, ReportFormat::Json));
  CHECK(j["overall_secure"] == false);
  CHECK(j["design"] == "flawed");
  bool some = false;
  for (const auto &s : j["states"])
    for (const char *m : {"stable", "transient"})
      for (const auto &leak : s[m]["leaks"]) {
        some = true;
        CHECK(b.circuit.find(leak["net"].get<std::string>()).has_value());
      }
  CHECK(some);
  CHECK_FALSE(j["states"][0].contains("time_s"));
}

TEST_CASE("reports are deterministic") {
  Bench b = generate("cascade-hpc1");
  RunOptions opt;
  opt.oracle = true;
  std::string a = emit_report(run_statewise(b.circuit, b.labels, opt),
                              ReportFormat::Json);
  std::string z = emit_report(run_statewise(b.circuit, b.labels, opt),
                              ReportFormat::Json);
  CHECK(a == z);
}

TEST_CASE("model subset and order two") {
  Bench b = gen_dom_and(2);
  RunOptions opt;
  opt.models = {Model::Stable};
  opt.order = 2;
  Report r = run_monolithic(b.circuit, b.labels, opt);
  CHECK(r.states[0].results.count(Model::Transient) == 0);
  CHECK_FALSE(r.secure());
}

TEST_CASE("statewise leaks are classified into cases") {
  Bench b = generate("cascade-dom", true);
  Report r = run_statewise(b.circuit, b.labels, {});
  REQUIRE_FALSE(r.cases.empty());
  for (const CaseNote &c : r.cases)
    CHECK(c.kind == 2);
  CHECK(r.first_failure == b.circuit.fsm()->states[1].name);
}

TEST_CASE("oracle cross-check is attached per state") {
  Bench b = generate("cascade-dom");
  RunOptions opt;
  opt.oracle = true;
  Report r = run_statewise(b.circuit, b.labels, opt);
  for (const StateEntry &s : r.states)
    for (const auto &[m, res] : s.results) {
      REQUIRE(res.oracle_secure);
      CHECK(*res.oracle_secure == res.secure);
    }
}
