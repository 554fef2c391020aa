// Copyright maskverif contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "maskverif/benchgen.hpp"
#include "maskverif/error.hpp"
#include "maskverif/oracle.hpp"
#include "maskverif/pipeline.hpp"

namespace fs = std::filesystem;
using namespace maskverif;

namespace {

constexpr int kSecure = 0, kInsecure = 1, kUsage = 2, kCap = 3;

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::Usage, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error(ErrorKind::Usage, "cannot write '" + path.string() + "'");
  out << text;
}

Circuit load_circuit(const std::string &path) {
  std::string text = slurp(path);
  return fs::path(path).extension() == ".json" ? import_structural_json(text)
                                               : parse_netlist(text);
}

std::vector<Model> models_from(const std::string &s) {
  if (s == "stable")
    return {Model::Stable};
  if (s == "transient")
    return {Model::Transient};
  return {Model::Stable, Model::Transient};
}

struct VerifyArgs {
  std::string netlist, labels, mode = "statewise", model = "both", json,
                                   dump_dir;
  int order = 1;
  bool oracle = false, timing = false;
};

int cmd_verify(const VerifyArgs &a) {
  Circuit c = load_circuit(a.netlist);
  InputLabeling l = parse_labels(slurp(a.labels), c);
  RunOptions opt;
  opt.models = models_from(a.model);
  opt.order = a.order;
  opt.oracle = a.oracle;
  opt.design = fs::path(a.netlist).stem().string();
  if (!a.dump_dir.empty()) {
    if (!c.fsm())
      throw Error(ErrorKind::Usage, "--dump-states needs an FSM-annotated design");
    fs::create_directories(a.dump_dir);
    std::size_t i = 0;
    for (const SubDesign &sd : split_all(c, l)) {
      fs::path base = fs::path(a.dump_dir) /
                      (opt.design + ".state" + std::to_string(i++));
      write_file(base.string() + ".net", dump_netlist(sd.circuit));
      write_file(base.string() + ".lbl", sd.labeling.dump());
    }
  }
  Report r = a.mode == "monolithic" ? run_monolithic(c, l, opt)
                                    : run_statewise(c, l, opt);
  std::cout << emit_report(r, ReportFormat::Text, a.timing);
  if (!a.json.empty()) {
    std::string js = emit_report(r, ReportFormat::Json, a.timing);
    if (a.json == "-")
      std::cout << js;
    else
      write_file(a.json, js);
  }
  return r.secure() ? kSecure : kInsecure;
}

int cmd_oracle(const std::string &netlist, const std::string &labels,
               const std::string &model) {
  Circuit c = load_circuit(netlist);
  InputLabeling l = parse_labels(slurp(labels), c);
  Oracle o(c, l);
  bool secure = true;
  for (Model m : models_from(model)) {
    Verdict v = o.run(m);
    secure = secure && v.secure;
    std::cout << to_string(m) << ": " << (v.secure ? "secure" : "insecure");
    for (const Leak &k : v.leaks)
      std::cout << " " << c.name(k.net);
    std::cout << "\n";
  }
  return secure ? kSecure : kInsecure;
}

int cmd_gen(const std::string &bench, const std::string &flaw,
            const std::string &dir) {
  if (!flaw.empty() && flaw != "reassoc")
    throw Error(ErrorKind::Usage, "unknown flaw '" + flaw + "'");
  Bench b = generate(bench, !flaw.empty());
  fs::create_directories(dir);
  std::string stem = bench + (flaw.empty() ? "" : "-" + flaw);
  fs::path base = fs::path(dir) / stem;
  write_file(base.string() + ".net", dump_netlist(b.circuit));
  write_file(base.string() + ".lbl", b.labels.dump());
  write_file(base.string() + ".json", export_structural_json(b.circuit));
  std::cout << "wrote " << base.string() << ".{net,lbl,json}\n";
  return kSecure;
}

int cmd_list() {
  for (const BenchSpec &s : bench_catalog()) {
    std::cout << s.name << "  scheme=" << to_string(s.scheme)
              << " states=" << s.states
              << (s.registered ? " registered" : "")
              << (s.name == "cascade-dom" ? " [--flaw reassoc]" : "") << "\n";
  }
  return kSecure;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Gate-level masking verification with FSM state splitting"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto *verify = app.add_subcommand("verify", "check a netlist");
  verify->add_option("--netlist", va.netlist, "netlist (.net text or .json)")
      ->required()
      ->check(CLI::ExistingFile);
  verify->add_option("--labels", va.labels, "label file")
      ->required()
      ->check(CLI::ExistingFile);
  verify->add_option("--mode", va.mode)
      ->check(CLI::IsMember({"statewise", "monolithic"}));
  verify->add_option("--model", va.model)
      ->check(CLI::IsMember({"stable", "transient", "both"}));
  verify->add_option("--order", va.order)->check(CLI::IsMember({1, 2}));
  verify->add_flag("--oracle", va.oracle, "also run the exhaustive oracle");
  verify->add_option("--json", va.json, "write the JSON report here ('-' = stdout)");
  verify->add_option("--dump-states", va.dump_dir,
                     "write each state's sub-design here");
  verify->add_flag("--timing", va.timing, "include wall-clock times");

  std::string on, ol, om = "both";
  auto *oracle = app.add_subcommand("oracle", "exhaustive probing check");
  oracle->add_option("--netlist", on)->required()->check(CLI::ExistingFile);
  oracle->add_option("--labels", ol)->required()->check(CLI::ExistingFile);
  oracle->add_option("--model", om)
      ->check(CLI::IsMember({"stable", "transient", "both"}));

  std::string gb, gf, gd = ".";
  auto *gen = app.add_subcommand("gen", "write a benchmark netlist");
  gen->add_option("--bench", gb)->required();
  gen->add_option("--flaw", gf)->check(CLI::IsMember({"reassoc"}));
  gen->add_option("-o,--out", gd, "output directory");

  auto *list = app.add_subcommand("list-benches", "list benchmark names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }
  try {
    if (verify->parsed())
      return cmd_verify(va);
    if (oracle->parsed())
      return cmd_oracle(on, ol, om);
    if (gen->parsed())
      return cmd_gen(gb, gf, gd);
    if (list->parsed())
      return cmd_list();
  } catch (const Error &e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return e.kind() == ErrorKind::ResourceCap ? kCap : kUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
