// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "idka/formula/expr.hpp"

namespace idka::formula
{

/// Canonical form: everything is expanded (bilinearity, distributivity,
/// exponent collection), then re-factored deterministically, e.g.
/// e(P_0, x*Q_1)*e(S_A, h_A*Q_1) becomes e(x*P_0 + h_A*S_A, Q_1).
/// Idempotent. Pairing arguments are ordered canonically (the pairing is symmetric).
Expr normalize(const Expr& e);
SecretFormula normalize(const SecretFormula& f);

/// normalize(f) and normalize(g) are identical trees, component by component.
bool structural_equiv(const SecretFormula& f, const SecretFormula& g);
bool structural_equiv(const Expr& f, const Expr& g);

}  // namespace idka::formula
