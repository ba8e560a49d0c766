#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "finspec/dixmier.hpp"
#include "finspec/omega_form.hpp"
#include "finspec/operator.hpp"
#include "finspec/spectral_triple.hpp"
#include "finspec/star_algebra.hpp"

namespace finspec {

// Configuration ingestion for the command-line tool. Files are JSON with
// three optional sections: "triples" (spectral triples to verify), "dixmier"
// (an eigenvalue sequence job) and "group_checks" (elements to classify).
// Complex entries are numbers, [re, im] pairs, or strings like "1.5-0.5i".

struct NamedElement {
  std::string label;
  Operator matrix;
};

struct TripleConfig {
  std::string name;
  Eigen::Index hilbert_dim = 0;
  Operator dirac;
  std::vector<Operator> generators;
  int ladder_depth = 5;
  std::uint64_t seed = 1;
  std::vector<NamedElement> elements;  // optional, used by `norms`

  FiniteSpectralTriple build() const {
    StarAlgebra algebra =
        StarAlgebra::close_from_generators(hilbert_dim, generators);
    return FiniteSpectralTriple(std::move(algebra),
                                HermitianOperator(dirac), ladder_depth);
  }
};

struct DixmierConfig {
  std::vector<double> dirac_eigenvalues;
  std::vector<double> weight;  // diagonal of L, matched order; defaults to 1
  double d = 1.0;
  std::vector<std::int64_t> checkpoints;
};

struct GroupCheckConfig {
  Family family = Family::unitary;
  Eigen::Index p = -1, q = -1;
  MembershipKind kind = MembershipKind::group;
  Operator element;
};

struct ToolConfig {
  std::vector<TripleConfig> triples;
  std::optional<DixmierConfig> dixmier;
  std::vector<GroupCheckConfig> group_checks;
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void parse_fail(const std::string& where,
                                    const std::string& what) {
  throw ParseError(where + ": " + what);
}

inline Complex parse_complex_string(const std::string& raw,
                                    const std::string& where) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) parse_fail(where, "empty complex literal");
  if (s.back() != 'i' && s.back() != 'I') {
    std::size_t used = 0;
    const double re = std::stod(s, &used);
    if (used != s.size()) parse_fail(where, "trailing characters in '" + raw + "'");
    return Complex(re, 0.0);
  }
  s.pop_back();  // trailing i
  if (s.empty() || s == "+") return Complex(0.0, 1.0);
  if (s == "-") return Complex(0.0, -1.0);
  // Split into real and imaginary parts at the last sign that is not an
  // exponent sign and not leading.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  try {
    if (split == std::string::npos) {
      return Complex(0.0, std::stod(s));
    }
    const std::string re_part = s.substr(0, split);
    std::string im_part = s.substr(split);
    if (im_part == "+") im_part = "1";
    if (im_part == "-") im_part = "-1";
    return Complex(std::stod(re_part), std::stod(im_part));
  } catch (const std::exception&) {
    parse_fail(where, "cannot parse complex literal '" + raw + "'");
  }
}

inline Complex parse_entry(const json& j, const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_string()) return parse_complex_string(j.get<std::string>(), where);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  parse_fail(where, "expected number, [re, im] pair, or complex string");
}

inline Operator parse_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    parse_fail(where, "expected a nonempty array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  Operator m(rows, rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() ||
        static_cast<Eigen::Index>(row.size()) != rows) {
      std::ostringstream os;
      os << where << ", row " << r;
      parse_fail(os.str(), "matrix literal must be square");
    }
    for (Eigen::Index c = 0; c < rows; ++c) {
      std::ostringstream os;
      os << where << "[" << r << "][" << c << "]";
      m(r, c) = parse_entry(row[static_cast<std::size_t>(c)], os.str());
    }
  }
  return m;
}

inline Operator diag_matrix(const std::vector<Complex>& entries) {
  const Eigen::Index d = static_cast<Eigen::Index>(entries.size());
  Operator m = Operator::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    m(i, i) = entries[static_cast<std::size_t>(i)];
  return m;
}

// Dirac specifications: a matrix literal, {"diag": [...]} or
// {"circle_dirac": n}; the string forms "diag: [...]" and "circle_dirac: n"
// are accepted as well.
inline Operator parse_dirac(const json& j, const std::string& where) {
  if (j.is_array()) return parse_matrix(j, where);
  json spec = j;
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const std::size_t colon = s.find(':');
    if (colon == std::string::npos)
      parse_fail(where, "unknown dirac spec '" + s + "'");
    const std::string key = s.substr(0, colon);
    json value;
    try {
      value = json::parse(s.substr(colon + 1));
    } catch (const json::exception& e) {
      parse_fail(where, std::string("bad dirac spec value: ") + e.what());
    }
    spec = json{{key, value}};
  }
  if (!spec.is_object() || spec.size() != 1)
    parse_fail(where, "dirac spec must be a matrix, diag, or circle_dirac");
  if (spec.contains("diag")) {
    std::vector<Complex> entries;
    for (std::size_t i = 0; i < spec["diag"].size(); ++i) {
      std::ostringstream os;
      os << where << ".diag[" << i << "]";
      entries.push_back(parse_entry(spec["diag"][i], os.str()));
    }
    if (entries.empty()) parse_fail(where, "empty diagonal");
    return diag_matrix(entries);
  }
  if (spec.contains("circle_dirac")) {
    if (!spec["circle_dirac"].is_number_integer())
      parse_fail(where, "circle_dirac needs an integer level count");
    const std::int64_t n = spec["circle_dirac"].get<std::int64_t>();
    if (n < 1 || 2 * n > 512)
      throw ValidationError(
          where + ": circle_dirac matrix form supports up to 256 levels; "
                  "use the dixmier section for long sequences");
    std::vector<Complex> entries;
    for (std::int64_t k = 1; k <= n; ++k) {
      entries.emplace_back(static_cast<double>(k), 0.0);
      entries.emplace_back(static_cast<double>(-k), 0.0);
    }
    return diag_matrix(entries);
  }
  parse_fail(where, "dirac spec must be a matrix, diag, or circle_dirac");
}

inline std::vector<Operator> preset_generators(const std::string& name,
                                               Eigen::Index dim,
                                               const std::string& where) {
  if (name == "full") {
    std::vector<Operator> gens;
    for (Eigen::Index k = 0; k + 1 < dim; ++k)
      gens.push_back(matrix_unit(dim, k, k + 1));
    return gens;
  }
  if (name == "diagonal") {
    std::vector<Operator> gens;
    for (Eigen::Index k = 0; k < dim; ++k)
      gens.push_back(matrix_unit(dim, k, k));
    return gens;
  }
  if (name == "pauli_x" || name == "pauli_y" || name == "pauli_z") {
    if (dim != 2)
      throw ValidationError(where + ": " + name + " needs hilbert_dim = 2");
    Operator m(2, 2);
    if (name == "pauli_x") m << 0, 1, 1, 0;
    if (name == "pauli_y") m << 0, Complex(0, -1), Complex(0, 1), 0;
    if (name == "pauli_z") m << 1, 0, 0, -1;
    return {m};
  }
  parse_fail(where, "unknown generator preset '" + name + "'");
}

inline TripleConfig parse_triple(const json& j, std::size_t index) {
  std::ostringstream ctx;
  ctx << "triples[" << index << "]";
  const std::string where = ctx.str();
  if (!j.is_object()) parse_fail(where, "expected an object");

  TripleConfig out;
  out.name = j.value("name", where);
  if (!j.contains("hilbert_dim") || !j["hilbert_dim"].is_number_integer())
    parse_fail(where, "missing integer field 'hilbert_dim'");
  out.hilbert_dim = j["hilbert_dim"].get<Eigen::Index>();
  if (out.hilbert_dim < 1)
    throw ValidationError(where + ": hilbert_dim must be positive");

  if (!j.contains("dirac")) parse_fail(where, "missing field 'dirac'");
  out.dirac = parse_dirac(j["dirac"], where + ".dirac");
  if (out.dirac.rows() != out.hilbert_dim)
    throw ValidationError(where + ": dirac dimension differs from hilbert_dim");
  if (!is_hermitian(out.dirac))
    throw ValidationError(where + ": dirac is not Hermitian within tolerance");

  if (j.contains("algebra_generators")) {
    const json& gens = j["algebra_generators"];
    if (!gens.is_array()) parse_fail(where, "'algebra_generators' must be a list");
    for (std::size_t g = 0; g < gens.size(); ++g) {
      std::ostringstream gctx;
      gctx << where << ".algebra_generators[" << g << "]";
      if (gens[g].is_string()) {
        for (Operator& m : preset_generators(gens[g].get<std::string>(),
                                             out.hilbert_dim, gctx.str()))
          out.generators.push_back(std::move(m));
      } else {
        Operator m = parse_matrix(gens[g], gctx.str());
        if (m.rows() != out.hilbert_dim)
          throw ValidationError(gctx.str() + ": dimension mismatch");
        out.generators.push_back(std::move(m));
      }
    }
  }

  out.ladder_depth = j.value("ladder_depth", 5);
  if (out.ladder_depth < 1 || out.ladder_depth > 6)
    throw ValidationError(where + ": ladder_depth must lie in [1, 6]");
  out.seed = j.value("seed", std::uint64_t{1});

  if (j.contains("elements")) {
    for (std::size_t e = 0; e < j["elements"].size(); ++e) {
      std::ostringstream ectx;
      ectx << where << ".elements[" << e << "]";
      const json& el = j["elements"][e];
      if (!el.is_object() || !el.contains("matrix"))
        parse_fail(ectx.str(), "expected {label, matrix}");
      NamedElement named;
      named.label = el.value("label", ectx.str());
      named.matrix = parse_matrix(el["matrix"], ectx.str() + ".matrix");
      if (named.matrix.rows() != out.hilbert_dim)
        throw ValidationError(ectx.str() + ": dimension mismatch");
      out.elements.push_back(std::move(named));
    }
  }
  return out;
}

inline DixmierConfig parse_dixmier(const json& j) {
  const std::string where = "dixmier";
  if (!j.is_object()) parse_fail(where, "expected an object");
  DixmierConfig out;

  if (!j.contains("sequence")) parse_fail(where, "missing field 'sequence'");
  const json& seq = j["sequence"];
  if (seq.is_array()) {
    for (const auto& v : seq) {
      if (!v.is_number()) parse_fail(where + ".sequence", "expected numbers");
      out.dirac_eigenvalues.push_back(v.get<double>());
    }
  } else {
    json spec = seq;
    if (seq.is_string()) {
      const std::string s = seq.get<std::string>();
      const std::size_t colon = s.find(':');
      if (colon == std::string::npos)
        parse_fail(where + ".sequence", "unknown generator '" + s + "'");
      try {
        spec = json{{s.substr(0, colon), json::parse(s.substr(colon + 1))}};
      } catch (const json::exception& e) {
        parse_fail(where + ".sequence", e.what());
      }
    }
    if (spec.is_object() && spec.contains("circle_dirac") &&
        spec["circle_dirac"].is_number_integer()) {
      out.dirac_eigenvalues = circle_dirac_eigenvalues(
          spec["circle_dirac"].get<std::int64_t>());
    } else {
      parse_fail(where + ".sequence",
                 "expected an eigenvalue list or circle_dirac generator");
    }
  }

  out.d = j.value("d", 1.0);
  if (!(out.d > 0.0)) throw ValidationError(where + ": d must be positive");

  if (!j.contains("checkpoints") || !j["checkpoints"].is_array())
    parse_fail(where, "missing array field 'checkpoints'");
  for (const auto& c : j["checkpoints"]) {
    if (!c.is_number_integer())
      parse_fail(where + ".checkpoints", "expected integers");
    out.checkpoints.push_back(c.get<std::int64_t>());
  }

  if (j.contains("weight")) {
    const json& w = j["weight"];
    if (w.is_number()) {
      out.weight.assign(out.dirac_eigenvalues.size(), w.get<double>());
    } else if (w.is_array()) {
      for (const auto& v : w) out.weight.push_back(v.get<double>());
    } else {
      parse_fail(where + ".weight", "expected a number or list");
    }
  } else {
    out.weight.assign(out.dirac_eigenvalues.size(), 1.0);
  }
  if (out.weight.size() != out.dirac_eigenvalues.size())
    throw ValidationError(where + ": weight length differs from sequence");
  return out;
}

inline GroupCheckConfig parse_group_check(const json& j, std::size_t index) {
  std::ostringstream ctx;
  ctx << "group_checks[" << index << "]";
  const std::string where = ctx.str();
  if (!j.is_object()) parse_fail(where, "expected an object");
  GroupCheckConfig out;

  const std::string family = j.value("family", "");
  if (family == "unitary") {
    out.family = Family::unitary;
  } else if (family == "symplectic") {
    out.family = Family::symplectic;
  } else if (family == "pseudo_unitary") {
    out.family = Family::pseudo_unitary;
    if (!j.contains("p") || !j.contains("q"))
      parse_fail(where, "pseudo_unitary needs 'p' and 'q'");
    out.p = j["p"].get<Eigen::Index>();
    out.q = j["q"].get<Eigen::Index>();
  } else {
    parse_fail(where, "family must be unitary, symplectic, or pseudo_unitary");
  }

  const std::string kind = j.value("membership", "group");
  if (kind == "group") {
    out.kind = MembershipKind::group;
  } else if (kind == "lie_algebra") {
    out.kind = MembershipKind::lie_algebra;
  } else {
    parse_fail(where, "membership must be 'group' or 'lie_algebra'");
  }

  if (!j.contains("element")) parse_fail(where, "missing field 'element'");
  out.element = parse_matrix(j["element"], where + ".element");
  return out;
}

}  // namespace detail

inline ToolConfig parse_config_text(const std::string& text,
                                    const std::string& origin) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError(origin + ": top level must be an object");

  ToolConfig out;
  if (j.contains("triples")) {
    if (!j["triples"].is_array())
      throw ParseError(origin + ": 'triples' must be a list");
    for (std::size_t i = 0; i < j["triples"].size(); ++i)
      out.triples.push_back(detail::parse_triple(j["triples"][i], i));
  }
  if (j.contains("dixmier"))
    out.dixmier = detail::parse_dixmier(j["dixmier"]);
  if (j.contains("group_checks")) {
    if (!j["group_checks"].is_array())
      throw ParseError(origin + ": 'group_checks' must be a list");
    for (std::size_t i = 0; i < j["group_checks"].size(); ++i)
      out.group_checks.push_back(
          detail::parse_group_check(j["group_checks"][i], i));
  }
  return out;
}

inline ToolConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open config file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

}  // namespace finspec
