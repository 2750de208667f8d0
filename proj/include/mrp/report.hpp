#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mrp/kemeny.hpp"
#include "mrp/simulate.hpp"
#include "mrp/specfile.hpp"

namespace mrp {

enum class MfptRoute { Direct, Fundamental, Group, Gtilde, GeneratorH };

const char* to_string(MfptRoute route);
MfptRoute parse_route(const std::string& name);  // throws BadSpec

struct AnalyzeReport {
  std::string kind;
  std::size_t m = 0;
  MfptRoute route = MfptRoute::Direct;
  StationaryProfile profile;
  Matrix mfpt;
  KemenyReport kemeny;
  ConstancyVerdict constancy;
  bool ill_conditioned = false;
};

AnalyzeReport analyze(const SpecFile& input, MfptRoute route = MfptRoute::Direct);

struct VerifyCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::string kind;
  std::size_t m = 0;
  std::vector<VerifyCheck> checks;
  bool passed = false;
  bool ill_conditioned = false;
};

/// Runs the whole invariant battery on one spec: stationarity residuals,
/// g-inverse defining relations, the MFPT matrix equation, route
/// agreements, Kemeny identities and the constancy equivalence, plus the
/// generator and birth-death cross-checks where applicable.
/// `check_tol_override` replaces every per-check tolerance when set.
VerifyReport verify(const SpecFile& input, std::optional<double> check_tol_override = {});

struct SimulateRow {
  std::string label;
  double analytic = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  double z = 0.0;
  bool has_z = false;
  bool ok = true;
};

struct SimulateReport {
  std::string kind;
  std::size_t m = 0;
  std::uint64_t trials = 0;
  std::uint64_t steps = 0;
  double horizon = 0.0;
  std::uint64_t seed = 0;
  HoldingShape shape = HoldingShape::Exponential;
  std::vector<SimulateRow> mfpt_rows;
  std::vector<SimulateRow> pi_rows;
  std::vector<SimulateRow> varpi_rows;
  bool all_ok = true;
};

SimulateReport simulate_report(const SpecFile& input, std::uint64_t trials, double horizon,
                               std::uint64_t seed, HoldingShape shape);

std::string render_text(const AnalyzeReport& rep);
std::string render_json(const AnalyzeReport& rep);
std::string render_text(const VerifyReport& rep, bool color);
std::string render_json(const VerifyReport& rep);
std::string render_text(const SimulateReport& rep, bool color);
std::string render_json(const SimulateReport& rep);

/// Fixed-format decimal rendering used by the JSON reports ("%.17g").
std::string decimal_string(double x);

}  // namespace mrp
