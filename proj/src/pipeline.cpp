#include "klein4/pipeline.hpp"

#include <istream>
#include <sstream>

#include "klein4/parse.hpp"

namespace klein4 {

using json = nlohmann::ordered_json;

Mode parse_mode(const std::string& s) {
  if (s == "analyze") return Mode::Analyze;
  if (s == "predict") return Mode::Predict;
  if (s == "verify") return Mode::Verify;
  if (s == "full") return Mode::Full;
  throw Error(ErrorKind::InvalidArgument, "unknown mode '" + s + "'");
}

const char* to_string(Mode m) {
  switch (m) {
    case Mode::Analyze: return "analyze";
    case Mode::Predict: return "predict";
    case Mode::Verify: return "verify";
    case Mode::Full: return "full";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Match: return "MATCH";
    case Verdict::Mismatch: return "MISMATCH";
    case Verdict::PredictionOnly: return "PREDICTION_ONLY";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::pair<std::string, std::string> split_binding(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos) throw Error(ErrorKind::InvalidArgument, "binding '" + s + "' lacks '='");
  return {trim(s.substr(0, eq)), trim(s.substr(eq + 1))};
}

}  // namespace

std::uint64_t parse_modulus_tail(const std::string& hex, int degree) {
  std::uint64_t v = 0;
  try {
    std::size_t used = 0;
    v = std::stoull(hex, &used, 16);
    if (used != hex.size()) throw std::invalid_argument(hex);
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, "modulus '" + hex + "' is not a hex number");
  }
  if (degree < 64 && (v >> degree) != 1) {
    throw Error(ErrorKind::InvalidArgument, "modulus '" + hex + "' does not have degree " + std::to_string(degree));
  }
  return degree < 64 ? v & ((std::uint64_t{1} << degree) - 1) : v;
}

InstanceConfig load_config(std::istream& in) {
  InstanceConfig cfg;
  std::string line;
  std::string modulus;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.starts_with("let ") || t.starts_with("let\t")) {
      cfg.lets.push_back(split_binding(trim(t.substr(4))));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::SyntaxError, "config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key == "field_degree") {
      try {
        cfg.field_degree = std::stoi(value);
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::SyntaxError, "config line " + std::to_string(lineno) + ": bad field degree");
      }
    } else if (key == "modulus") {
      modulus = value;
    } else if (key == "p") {
      cfg.p_expr = value;
    } else if (key == "q") {
      cfg.q_expr = value;
    } else if (key == "mode") {
      cfg.mode = parse_mode(value);
    } else if (key == "probe") {
      cfg.probes.push_back(value);
    } else {
      throw Error(ErrorKind::SyntaxError, "config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!modulus.empty()) cfg.modulus_tail = parse_modulus_tail(modulus, cfg.field_degree);
  return cfg;
}

std::shared_ptr<const FieldCtx> make_field(const InstanceConfig& cfg) {
  if (cfg.field_degree < 1 || cfg.field_degree > 64) {
    throw Error(ErrorKind::InvalidArgument, "field degree must lie in 1..64");
  }
  return cfg.modulus_tail ? FieldCtx::make(cfg.field_degree, *cfg.modulus_tail) : FieldCtx::make(cfg.field_degree);
}

Bindings evaluate_lets(const InstanceConfig& cfg, const FieldCtx& ctx) {
  Bindings env;
  for (const auto& [name, expr] : cfg.lets) {
    if (name == "t" || name == "g" || name.empty()) {
      throw Error(ErrorKind::InvalidArgument, "cannot bind the reserved name '" + name + "'");
    }
    env[name] = parse_expr(expr, ctx, env);
  }
  return env;
}

Instance prepare(std::shared_ptr<const FieldCtx> ctx, const RatFun& p, const RatFun& q) {
  Instance inst;
  inst.ctx = std::move(ctx);
  inst.analysis = analyze(CoverSpec::make(inst.ctx, p, q));
  inst.locals = classify_all(inst.analysis);
  inst.invariants = invariants_of(inst.analysis, inst.locals);
  return inst;
}

Instance prepare(const InstanceConfig& cfg) {
  auto ctx = make_field(cfg);
  const Bindings env = evaluate_lets(cfg, *ctx);
  const RatFun p = parse_expr(cfg.p_expr, *ctx, env);
  const RatFun q = parse_expr(cfg.q_expr, *ctx, env);
  if (p == q) throw Error(ErrorKind::NotRamified, "p = q: the third subextension is trivial");
  return prepare(ctx, p, q);
}

Verification verify(const Instance& inst, bool full_checks) {
  Verification v;
  const FunctionField K(inst.analysis);
  const BasisSpec basis = build_basis(K, inst.analysis, inst.locals);
  v.basis_size = basis.size();
  v.module = action_matrices(K, basis);
  v.decomposition = decompose(v.module, *inst.ctx);
  if (full_checks) {
    const std::vector<LocalFrame> frames = local_frames(K, inst.analysis, inst.locals);
    for (const BasisElement& e : basis.elements) {
      if (!verify_holomorphic(e.f, K, inst.analysis, frames)) ++v.non_holomorphic;
    }
    const KleinModule table = action_matrices_table(inst.analysis, inst.locals, basis);
    v.table_agrees = table.S == v.module.S && table.T == v.module.T;
  }
  return v;
}

json point_json(const ProjPoint& y, const FieldCtx& ctx) {
  if (y.infinite) return "inf";
  const Gf x = ctx.element(y.mu.bits);
  return json{{"power", ctx.power_literal(x)}, {"bits", ctx.bit_literal(x)}};
}

json to_json(const Decomposition& d, const FieldCtx& ctx) {
  json arr = json::array();
  for (const auto& [l, k] : d) {
    json e{{"kind", to_string(l.kind)}, {"dim", l.dim}};
    if (l.kind == IndecKind::N) e["lambda"] = point_json(l.lambda, ctx);
    e["multiplicity"] = k;
    arr.push_back(std::move(e));
  }
  return arr;
}

namespace {

std::string mobius_string(const Mobius& m, const FieldCtx& ctx) {
  const auto lin = [&](const Gf& x, const Gf& y) {
    return Poly({ctx.element(y.bits), ctx.element(x.bits)}, &ctx);
  };
  const Poly num = lin(m.a, m.b);
  const Poly den = lin(m.c, m.d);
  return "(" + to_string(num) + ")/(" + to_string(den) + ")";
}

json branch_json(const Instance& inst) {
  const FieldCtx& ctx = *inst.ctx;
  json arr = json::array();
  for (std::size_t i = 0; i < inst.analysis.branch.size(); ++i) {
    const BranchPoint& bp = inst.analysis.branch[i];
    const LocalData& ld = inst.locals[i];
    arr.push_back(json{{"y", point_json(bp.y, ctx)},
                       {"original", point_json(bp.original, ctx)},
                       {"m", bp.m},
                       {"M", bp.M},
                       {"case", to_string(bp.tag)},
                       {"lambda", point_json(ld.lambda, ctx)},
                       {"delta", ld.delta},
                       {"class", to_string(ld.b_class)},
                       {"nu", ld.nu},
                       {"different_exponent", bp.different_exp}});
  }
  return arr;
}

json filtration_json(const FiltrationDims& r) { return json::array({r.r0, r.r1, r.r2, r.r3}); }

json eps_json(const EpsilonConstraints& e, const FieldCtx& ctx) {
  json eps1 = json::array();
  for (const auto& [l, v] : e.eps1) eps1.push_back(json{{"lambda", point_json(l, ctx)}, {"value", v}});
  json drop = json::array();
  for (const auto& l : e.droppable) drop.push_back(point_json(l, ctx));
  return json{{"eps1", eps1}, {"eps2", e.eps2}, {"eps3_plus_eps4", e.eps34}, {"eps5", e.eps5}, {"droppable", drop}};
}

std::vector<ProjPoint> probes_for(const InstanceConfig& cfg, const Instance& inst) {
  if (cfg.probes.empty()) return canonical_probes(inst.invariants, *inst.ctx);
  const Bindings env = evaluate_lets(cfg, *inst.ctx);
  std::vector<ProjPoint> out;
  for (const std::string& s : cfg.probes) out.push_back(parse_point(s, *inst.ctx, env));
  return out;
}

}  // namespace

Report run(const InstanceConfig& cfg) {
  const Instance inst = prepare(cfg);
  const FieldCtx& ctx = *inst.ctx;
  const CoverAnalysis& an = inst.analysis;
  Report rep;
  std::ostringstream sum;
  json& j = rep.json;
  j["mode"] = to_string(cfg.mode);
  j["field"] = json{{"degree", ctx.degree()}, {"modulus_tail", ctx.bit_literal(ctx.element(ctx.modulus_tail()))}};
  j["input"] = json{{"p", to_string(an.input.p)}, {"q", to_string(an.input.q)}};
  j["normalization"] = json{{"applied", !an.map.is_identity()},
                            {"t_old", mobius_string(an.map, ctx)},
                            {"p", to_string(an.spec.p)},
                            {"q", to_string(an.spec.q)}};
  j["branch_points"] = branch_json(inst);
  j["genus"] = an.genus_X;
  j["katz_gabber"] = katz_gabber_check(an);
  sum << "genus " << an.genus_X << ", " << an.branch.size() << " branch point(s)\n";
  for (std::size_t i = 0; i < an.branch.size(); ++i) {
    const BranchPoint& bp = an.branch[i];
    sum << "  " << to_string(bp.original, ctx) << ": m=" << bp.m << " M=" << bp.M << " case " << to_string(bp.tag)
        << " lambda=" << to_string(inst.locals[i].lambda, ctx) << " delta=" << inst.locals[i].delta << "\n";
  }
  if (cfg.mode == Mode::Analyze) {
    rep.verdict = Verdict::PredictionOnly;
    j["verdict"] = to_string(rep.verdict);
    rep.summary = sum.str() + "verdict " + to_string(rep.verdict) + "\n";
    return rep;
  }

  const std::vector<ProjPoint> probes = probes_for(cfg, inst);
  json probe_arr = json::array();
  for (const ProjPoint& l : probes) {
    json divisors = json::array();
    for (const BranchInvariants& y : inst.invariants) {
      const DivisorCoeffs d = divisor_coeffs(y, l);
      divisors.push_back(json::array({d.d0, d.d1, d.d2, d.d3}));
    }
    probe_arr.push_back(json{{"lambda", point_json(l, ctx)},
                             {"divisor_coeffs", divisors},
                             {"r", filtration_json(filtration_dims(inst.invariants, l))}});
  }
  j["probes"] = probe_arr;
  j["epsilon"] = eps_json(epsilon_constraints(inst.invariants, 0), ctx);
  const SpecialResult special = decompose_special(inst.invariants, 0);
  if (special.decomposition) {
    j["special_case"] = to_json(*special.decomposition, ctx);
  } else {
    j["special_case"] = json{{"offending_branch_points", special.offending}};
  }
  const Decomposition predicted = decompose_p1(inst.invariants);
  j["predicted"] = to_json(predicted, ctx);
  sum << "predicted " << to_string(predicted, ctx) << "\n";

  if (cfg.mode == Mode::Predict) {
    rep.verdict = Verdict::PredictionOnly;
  } else {
    const bool full = cfg.mode == Mode::Full;
    const Verification v = verify(inst, full);
    j["basis_size"] = v.basis_size;
    j["verified"] = to_json(v.decomposition, ctx);
    sum << "verified  " << to_string(v.decomposition, ctx) << "\n";
    bool ok = v.decomposition == predicted && static_cast<int>(v.basis_size) == an.genus_X;
    if (full) {
      json checks;
      checks["non_holomorphic_basis_elements"] = v.non_holomorphic;
      checks["action_table_agrees"] = v.table_agrees;
      bool filtration_ok = true;
      for (const ProjPoint& l : probes) {
        const SubquotientDims s = filtration_subquotient_dims(v.module, l);
        const FiltrationDims r = filtration_dims(inst.invariants, l);
        filtration_ok = filtration_ok && s.d10 == r.r0 - 1 && s.d21 == r.r1 - 1 && s.d32 == r.r2 - 1 &&
                        s.d43 == r.r3 - 1;
      }
      checks["filtration_agrees"] = filtration_ok;
      const std::vector<std::string> bad = check_epsilons(v.decomposition, inst.invariants, 0, ctx);
      checks["epsilon_violations"] = bad;
      j["checks"] = checks;
      ok = ok && v.non_holomorphic == 0 && v.table_agrees && filtration_ok && bad.empty();
    }
    rep.verdict = ok ? Verdict::Match : Verdict::Mismatch;
  }
  j["verdict"] = to_string(rep.verdict);
  rep.summary = sum.str() + "verdict " + to_string(rep.verdict) + "\n";
  return rep;
}

Report run_formula(const std::vector<BranchInvariants>& ys, int gY, const FieldCtx& ctx) {
  for (const BranchInvariants& y : ys) validate(y);
  if (ys.empty()) throw Error(ErrorKind::NotRamified, "no branch data given");
  Report rep;
  json& j = rep.json;
  std::ostringstream sum;
  j["mode"] = "formula";
  j["base_genus"] = gY;
  json arr = json::array();
  for (const BranchInvariants& y : ys) {
    const EllData e = ell_data(y);
    arr.push_back(json{{"m", y.m},
                       {"M", y.M},
                       {"delta", y.delta},
                       {"lambda", point_json(y.lambda, ctx)},
                       {"case", to_string(y.tag())},
                       {"ell", e.ell},
                       {"a1", e.a1},
                       {"a2", e.a2}});
  }
  j["branch_points"] = arr;
  j["epsilon"] = eps_json(epsilon_constraints(ys, gY), ctx);
  const SpecialResult special = decompose_special(ys, gY);
  if (special.decomposition) {
    j["special_case"] = to_json(*special.decomposition, ctx);
    sum << "special case " << to_string(*special.decomposition, ctx) << "\n";
  } else {
    j["special_case"] = json{{"offending_branch_points", special.offending}};
  }
  if (gY == 0) {
    const Decomposition d = decompose_p1(ys);
    j["predicted"] = to_json(d, ctx);
    sum << "predicted " << to_string(d, ctx) << "\n";
  }
  rep.verdict = Verdict::PredictionOnly;
  j["verdict"] = to_string(rep.verdict);
  rep.summary = sum.str() + "verdict " + to_string(rep.verdict) + "\n";
  return rep;
}

KleinModule read_module(std::istream& in, const FieldCtx& ctx) {
  std::string word;
  int n = -1;
  if (!(in >> word) || word != "dim" || !(in >> n) || n < 0) {
    throw Error(ErrorKind::SyntaxError, "module file must start with 'dim n'");
  }
  const auto read_matrix = [&]() {
    GfMatrix a = linalg::zeros<Gf>(n, n);
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < n; ++c) {
        if (!(in >> word)) throw Error(ErrorKind::SyntaxError, "module file ends early");
        const ProjPoint x = parse_point(word, ctx);
        if (x.infinite) throw Error(ErrorKind::SyntaxError, "matrix entries must be field elements");
        a(i, c) = ctx.element(x.mu.bits);
      }
    }
    return a;
  };
  KleinModule m;
  m.S = read_matrix();
  m.T = read_matrix();
  return m;
}

Report run_module(const KleinModule& m, const FieldCtx& ctx) {
  Report rep;
  const Decomposition d = decompose(m, ctx);
  rep.json["mode"] = "module";
  rep.json["dim"] = m.dim();
  rep.json["decomposition"] = to_json(d, ctx);
  rep.verdict = Verdict::PredictionOnly;
  rep.json["verdict"] = to_string(rep.verdict);
  rep.summary = "decomposition " + to_string(d, ctx) + "\n";
  return rep;
}

}  // namespace klein4
