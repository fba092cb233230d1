// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "idka/formula/expr.hpp"

#include <string_view>

namespace idka::formula
{

/// Which identity-based key construction the DH formula is translated into.
enum class RuleSet
{
    /// Sakai-Ohgishi-Kasahara: a*Q -> e(S_A, Q); with a static term present,
    /// x*Q -> e(P_0, x*Q); a*x*Q -> e(S_A, x*Q). A component made only of
    /// ephemeral terms (the x*T_B of UM-style protocols) is kept as a DH value.
    sok,
    /// Sakai-Kasahara: inv(a)*Q -> e(S_A, Q); x*P -> e(P, P)^x.
    sk,
};

std::string_view to_string(RuleSet r);
RuleSet rule_set_from_string(std::string_view name);

enum class Actor
{
    A,
    B,
};

/// Translates a DH-family session-secret formula written for `actor` into its
/// ID-based counterpart, normalized. Throws FormulaError(untranslatable) naming
/// the first term no rule covers.
SecretFormula apply_rules(const SecretFormula& f, RuleSet rules, Actor actor = Actor::A);

}  // namespace idka::formula
