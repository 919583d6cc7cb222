#pragma once

// JSON forms of theories, models, constraint systems, certificates and
// reports. Complex numbers are [re, im], matrices are row-major nested
// arrays, rationals are "p/q" strings. Key order is fixed so the same object
// always serializes to the same bytes.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ncert/bbmodel.hpp"
#include "ncert/feasibility.hpp"
#include "ncert/kraus.hpp"
#include "ncert/nogo.hpp"
#include "ncert/ontomodel.hpp"
#include "ncert/operational.hpp"

namespace ncert {

using Json = nlohmann::ordered_json;

/// Malformed or schema-violating input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses text, reporting syntax errors as "line L, column C: ...".
Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);
/// Two-space indentation and a trailing newline.
std::string dump(const Json& j);

Json to_json(const CMatrix& m);
CMatrix cmatrix_from_json(const Json& j);
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json to_json(const OperationalTheory& theory);
OperationalTheory theory_from_json(const Json& j);

Json to_json(const OntModel& model);
OntModel ont_model_from_json(const Json& j);

Json to_json(const ConstraintSystem& sys);
ConstraintSystem constraint_system_from_json(const Json& j);

/// A constraint system either given directly (has "variables") or derived
/// from an operational theory (has "preparations").
ConstraintSystem instance_from_json(const Json& j, double tol = kDefaultTol);

Json to_json(const Certificate& cert);
Json to_json(const KIdentityReport& report);
Json to_json(const SimulationReport& report);
Json to_json(const GleasonReport& report);
Json to_json(const OdUnsharpReport& report);
Json to_json(const ForcedIndicator& forced);

}  // namespace ncert
