#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrp/chain.hpp"
#include "mrp/ctmc.hpp"

namespace mrp {

/// A parsed chain-spec file: the universal MrpSpec plus, for generator
/// -driven kinds, the original generator and birth-death rates (some
/// verification routes need them).
struct SpecFile {
  std::string kind;  // "dtmc" | "mrp" | "ctmc" | "bd"
  MrpSpec spec;
  std::optional<Generator> gen;
  std::optional<BirthDeathParams> bd;
  double tol = 1e-9;
  std::optional<std::uint64_t> seed;
};

/// Parses a JSON chain spec. Exactly the fields demanded by `kind` must
/// be present (plus optional tol/seed); anything else is rejected.
/// Syntax errors carry line:column anchors.
SpecFile parse_spec_text(const std::string& text, std::optional<double> tol_override = {});

SpecFile load_spec_file(const std::string& path, std::optional<double> tol_override = {});

const std::vector<std::string>& builtin_names();
bool is_builtin(const std::string& name);
/// Canonical spec JSON for dtmc2 | mrp2 | ctmc2 | bd3.
std::string builtin_spec(const std::string& name);

/// Loads `arg` as a file path, falling back to the built-in of that name
/// when no such file exists.
SpecFile load_spec_or_builtin(const std::string& arg, std::optional<double> tol_override = {});

}  // namespace mrp
