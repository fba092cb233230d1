// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "idka/backend/params.hpp"
#include "idka/formula/expr.hpp"

#include <map>
#include <string>
#include <vector>

namespace idka::formula
{

/// Concrete values for atoms. Formulas are evaluated from party A's point of view.
using Assignment = std::map<std::string, Value, std::less<>>;

/// Throws ConfigError naming the atom when the assignment lacks one, and
/// ValidationError on inverting zero.
Value evaluate(const PairingParams& pp, const Expr& e, const Assignment& env);
std::vector<Value> evaluate(const PairingParams& pp, const SecretFormula& f, const Assignment& env);

}  // namespace idka::formula
