// JSON and LaTeX views of scalars, polynomials, root systems and invariant
// systems. Terms are always written in graded-lex order so output is stable.
#pragma once

#include <string>

#include <json.hpp>

#include "canon/canonical.hpp"
#include "canon/groups.hpp"
#include "canon/polynomial.hpp"

namespace canon {

using json = nlohmann::ordered_json;

json polynomial_to_json(const Polynomial& p);
/// Throws std::invalid_argument on malformed input.
Polynomial polynomial_from_json(const json& j);

json group_to_json(const GroupSpec& spec);
GroupSpec group_from_json(const json& j);

json root_system_to_json(const RootSystem& rs);

json system_to_json(const InvariantSystem& sys);
InvariantSystem system_from_json(const json& j);

json report_to_json(const VerificationReport& rep);

std::string polynomial_to_latex(const Polynomial& p);
std::string system_to_latex(const InvariantSystem& sys);

}  // namespace canon
