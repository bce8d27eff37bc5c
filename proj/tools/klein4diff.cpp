#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "klein4/pipeline.hpp"

namespace {

using namespace klein4;

// "m,M,delta,lambda"
BranchInvariants parse_branch(const std::string& s, const FieldCtx& ctx) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 4) throw Error(ErrorKind::SyntaxError, "branch '" + s + "' must be m,M,delta,lambda");
  BranchInvariants b;
  try {
    b.m = std::stoi(parts[0]);
    b.M = std::stoi(parts[1]);
    b.delta = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw Error(ErrorKind::SyntaxError, "branch '" + s + "' has a non-integer field");
  }
  b.lambda = parse_point(parts[3], ctx);
  return b;
}

void emit(const Report& rep, const std::string& json_path) {
  const std::string doc = rep.json.dump(2);
  std::cout << doc << "\n";
  std::cerr << rep.summary;
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + json_path);
    out << doc << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galois module structure of holomorphic differentials of Klein four covers of P^1 in characteristic 2"};
  std::string mode;
  std::string config_path;
  std::string json_path;
  int degree = 0;
  std::string modulus;
  std::string p_expr;
  std::string q_expr;
  std::vector<std::string> probes;
  std::vector<std::string> lets;
  std::vector<std::string> branches;
  int base_genus = 0;
  std::string matrices;

  app.add_option("mode", mode, "analyze | predict | verify | full | formula | module");
  app.add_option("--config", config_path, "key = value instance file");
  app.add_option("--field-degree,-n", degree, "n for F_{2^n}");
  app.add_option("--modulus", modulus, "defining polynomial as hex, leading term included");
  app.add_option("--p", p_expr, "first Artin-Schreier function");
  app.add_option("--q", q_expr, "second Artin-Schreier function");
  app.add_option("--probe", probes, "lambda to probe (repeatable)");
  app.add_option("--let", lets, "name=EXPR constant binding (repeatable)");
  app.add_option("--json", json_path, "also write the report to this file");
  app.add_option("--branch", branches, "formula mode: m,M,delta,lambda (repeatable)");
  app.add_option("--base-genus", base_genus, "formula mode: genus of the base curve");
  app.add_option("--matrices", matrices, "module mode: matrix file");
  CLI11_PARSE(app, argc, argv);

  try {
    InstanceConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + config_path);
      cfg = load_config(in);
    }
    if (degree != 0) cfg.field_degree = degree;
    if (!modulus.empty()) cfg.modulus_tail = parse_modulus_tail(modulus, cfg.field_degree);
    if (!p_expr.empty()) cfg.p_expr = p_expr;
    if (!q_expr.empty()) cfg.q_expr = q_expr;
    for (const std::string& l : lets) {
      const auto eq = l.find('=');
      if (eq == std::string::npos) throw Error(ErrorKind::InvalidArgument, "--let expects name=EXPR");
      cfg.lets.emplace_back(l.substr(0, eq), l.substr(eq + 1));
    }
    if (!probes.empty()) cfg.probes = probes;
    if (mode.empty() && config_path.empty()) throw Error(ErrorKind::InvalidArgument, "no mode given");

    if (mode == "formula") {
      const auto ctx = make_field(cfg);
      std::vector<BranchInvariants> ys;
      for (const std::string& b : branches) ys.push_back(parse_branch(b, *ctx));
      const Report rep = run_formula(ys, base_genus, *ctx);
      emit(rep, json_path);
      return rep.exit_code();
    }
    if (mode == "module") {
      const auto ctx = make_field(cfg);
      std::ifstream in(matrices);
      if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read matrix file '" + matrices + "'");
      const Report rep = run_module(read_module(in, *ctx), *ctx);
      emit(rep, json_path);
      return rep.exit_code();
    }
    if (!mode.empty()) cfg.mode = parse_mode(mode);
    if (cfg.p_expr.empty() || cfg.q_expr.empty()) throw Error(ErrorKind::InvalidArgument, "both --p and --q are required");
    const Report rep = run(cfg);
    emit(rep, json_path);
    return rep.exit_code();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
