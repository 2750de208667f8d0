#include "mrp/specfile.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mrp/errors.hpp"

namespace mrp {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::BadSpec, msg); }

Matrix parse_matrix(const json& node, const std::string& name) {
  if (!node.is_array() || node.empty()) bad(name + " must be a non-empty array of rows");
  const std::size_t rows = node.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i)
    if (!node[i].is_array()) bad(name + " row " + std::to_string(i + 1) + " is not an array");
  cols = node[0].size();
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (node[i].size() != cols)
      bad(name + " row " + std::to_string(i + 1) + " has inconsistent length");
    for (std::size_t j = 0; j < cols; ++j) {
      if (!node[i][j].is_number())
        bad(name + "[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) +
            "] is not a number");
      m(i, j) = node[i][j].get<double>();
    }
  }
  return m;
}

Vec parse_vector(const json& node, const std::string& name) {
  if (!node.is_array() || node.empty()) bad(name + " must be a non-empty array");
  Vec v(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_number()) bad(name + "[" + std::to_string(i + 1) + "] is not a number");
    v[i] = node[i].get<double>();
  }
  return v;
}

void check_fields(const json& doc, const std::set<std::string>& required,
                  const std::set<std::string>& optional) {
  for (const auto& item : doc.items()) {
    if (!required.count(item.key()) && !optional.count(item.key()))
      bad("unexpected field \"" + item.key() + "\"");
  }
  for (const auto& field : required)
    if (!doc.contains(field)) bad("missing required field \"" + field + "\"");
}

std::string line_anchor(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

}  // namespace

SpecFile parse_spec_text(const std::string& text, std::optional<double> tol_override) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad("JSON syntax error at " + line_anchor(text, e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) bad("spec must be a JSON object");
  if (!doc.contains("kind") || !doc["kind"].is_string()) bad("missing string field \"kind\"");
  const std::string kind = doc["kind"].get<std::string>();

  double tol = 1e-9;
  if (doc.contains("tol")) {
    if (!doc["tol"].is_number() || !(doc["tol"].get<double>() > 0.0))
      bad("tol must be a positive number");
    tol = doc["tol"].get<double>();
  }
  if (tol_override) tol = *tol_override;

  std::optional<std::uint64_t> seed;
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) bad("seed must be a nonnegative integer");
    seed = doc["seed"].get<std::uint64_t>();
  }

  if (kind == "dtmc") {
    check_fields(doc, {"kind", "P"}, {"tol", "seed"});
    MrpSpec spec = MrpSpec::dtmc(validate_chain(parse_matrix(doc["P"], "P"), tol));
    return SpecFile{kind, std::move(spec), std::nullopt, std::nullopt, tol, seed};
  }
  if (kind == "mrp") {
    if (doc.contains("mu") == doc.contains("P1"))
      bad("mrp requires exactly one of \"mu\" or \"P1\"");
    if (doc.contains("mu"))
      check_fields(doc, {"kind", "P", "mu"}, {"tol", "seed"});
    else
      check_fields(doc, {"kind", "P", "P1"}, {"tol", "seed"});
    StochasticMatrix chain = validate_chain(parse_matrix(doc["P"], "P"), tol);
    MrpSpec spec = doc.contains("mu")
                       ? MrpSpec::with_means(std::move(chain), parse_vector(doc["mu"], "mu"))
                       : MrpSpec::with_moments(std::move(chain), parse_matrix(doc["P1"], "P1"));
    return SpecFile{kind, std::move(spec), std::nullopt, std::nullopt, tol, seed};
  }
  if (kind == "ctmc") {
    check_fields(doc, {"kind", "Q"}, {"tol", "seed"});
    Generator gen = validate_generator(parse_matrix(doc["Q"], "Q"), tol);
    MrpSpec spec = mrp_from_generator(gen);
    return SpecFile{kind, std::move(spec), std::move(gen), std::nullopt, tol, seed};
  }
  if (kind == "bd") {
    check_fields(doc, {"kind", "alpha", "beta"}, {"tol", "seed"});
    BirthDeathParams bd{parse_vector(doc["alpha"], "alpha"), parse_vector(doc["beta"], "beta")};
    Generator gen = bd_generator(bd);
    MrpSpec spec = mrp_from_generator(gen);
    return SpecFile{kind, std::move(spec), std::move(gen), std::move(bd), tol, seed};
  }
  bad("unknown kind \"" + kind + "\" (expected dtmc|mrp|ctmc|bd)");
}

SpecFile load_spec_file(const std::string& path, std::optional<double> tol_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open spec file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_spec_text(buf.str(), tol_override);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"dtmc2", "mrp2", "ctmc2", "bd3"};
  return names;
}

bool is_builtin(const std::string& name) {
  for (const auto& n : builtin_names())
    if (n == name) return true;
  return false;
}

std::string builtin_spec(const std::string& name) {
  if (name == "dtmc2") return "{\n  \"kind\": \"dtmc\",\n  \"P\": [[0, 1], [1, 0]]\n}\n";
  if (name == "mrp2")
    return "{\n  \"kind\": \"mrp\",\n  \"P\": [[0.5, 0.5], [0.25, 0.75]],\n  \"mu\": [2, 4]\n}\n";
  if (name == "ctmc2") return "{\n  \"kind\": \"ctmc\",\n  \"Q\": [[-1, 1], [2, -2]]\n}\n";
  if (name == "bd3")
    return "{\n  \"kind\": \"bd\",\n  \"alpha\": [1, 2],\n  \"beta\": [1, 2]\n}\n";
  bad("unknown example \"" + name + "\" (available: dtmc2, mrp2, ctmc2, bd3)");
}

SpecFile load_spec_or_builtin(const std::string& arg, std::optional<double> tol_override) {
  if (!std::filesystem::exists(arg) && is_builtin(arg))
    return parse_spec_text(builtin_spec(arg), tol_override);
  return load_spec_file(arg, tol_override);
}

}  // namespace mrp
