#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "klein4/holo.hpp"
#include "klein4/parse.hpp"
#include "klein4/predict.hpp"

namespace klein4 {

enum class Mode { Analyze, Predict, Verify, Full };
Mode parse_mode(const std::string& s);
const char* to_string(Mode m);

struct InstanceConfig {
  int field_degree = 0;
  std::optional<std::uint64_t> modulus_tail;
  std::string p_expr;
  std::string q_expr;
  Mode mode = Mode::Full;
  std::vector<std::string> probes;                        // empty: canonical set
  std::vector<std::pair<std::string, std::string>> lets;  // evaluated in order
};

/// `key = value` lines; keys field_degree, modulus, p, q, mode, probe, let.
/// Blank lines and lines starting with '#' are ignored.
InstanceConfig load_config(std::istream& in);

/// Modulus "x^n + tail" given as hex including the leading term, e.g. 0x13.
std::uint64_t parse_modulus_tail(const std::string& hex, int degree);

enum class Verdict { Match, Mismatch, PredictionOnly };
const char* to_string(Verdict v);

struct Report {
  nlohmann::ordered_json json;
  std::string summary;
  Verdict verdict = Verdict::PredictionOnly;

  [[nodiscard]] int exit_code() const { return verdict == Verdict::Mismatch ? 2 : 0; }
};

/// Everything computed for one instance.
struct Instance {
  std::shared_ptr<const FieldCtx> ctx;
  CoverAnalysis analysis;
  std::vector<LocalData> locals;
  std::vector<BranchInvariants> invariants;
};

std::shared_ptr<const FieldCtx> make_field(const InstanceConfig& cfg);
Bindings evaluate_lets(const InstanceConfig& cfg, const FieldCtx& ctx);
Instance prepare(const InstanceConfig& cfg);
Instance prepare(std::shared_ptr<const FieldCtx> ctx, const RatFun& p, const RatFun& q);

/// Result of the independent linear-algebra path.
struct Verification {
  std::size_t basis_size = 0;
  Decomposition decomposition;
  KleinModule module;
  std::size_t non_holomorphic = 0;
  bool table_agrees = false;
};

Verification verify(const Instance& inst, bool full_checks);

Report run(const InstanceConfig& cfg);

/// Formula mode on abstract branch data over a base of genus gY.
Report run_formula(const std::vector<BranchInvariants>& ys, int gY, const FieldCtx& ctx);

/// Decomposition of a module read in the matrix file format:
/// "dim n", then n rows of S, then n rows of T, entries parsed as constants.
KleinModule read_module(std::istream& in, const FieldCtx& ctx);
Report run_module(const KleinModule& m, const FieldCtx& ctx);

nlohmann::ordered_json to_json(const Decomposition& d, const FieldCtx& ctx);
nlohmann::ordered_json point_json(const ProjPoint& y, const FieldCtx& ctx);

}  // namespace klein4
