// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "idka/backend/rng.hpp"
#include "idka/formula/evaluate.hpp"
#include "idka/formula/expr.hpp"
#include "idka/formula/rules.hpp"

namespace idka::formula
{

enum class EquivMode
{
    /// Both formulas evaluated under one assignment; every component must match.
    plain,
    /// f is a DH formula, g its ID-based image. Target-valued components of g
    /// must satisfy dlog(g) = c * dlog(f) with a = dlog(Q_A) (SOK, c = s) or
    /// a = s + u_A (SK, c = 1); element-valued components must match exactly.
    correspondence,
};

/// One random assignment of every atom consistent with the key setting:
/// P_0 = sP, Q_A = H(ID_A), S_A = sQ_A (SOK) or Q_A = (s + u_A)P,
/// S_A = (s + u_A)^-1 P (SK), and DH keys with a = dlog(Q_A) so the DH and ID
/// views share their public keys. Messages T_A, T_B are random points.
Assignment random_assignment(const PairingParams& pp, RuleSet setting, Rng& rng);

/// Randomized equivalence check over `trials` assignments. Throws ConfigError
/// when trials is zero. Correspondence mode on tiny parameters goes through
/// brute-force discrete logs; on larger ones it compares g with e(f, P)^c.
bool semantic_equiv(const PairingParams& pp, const SecretFormula& f, const SecretFormula& g, RuleSet setting,
    EquivMode mode, unsigned trials, Rng& rng);

}  // namespace idka::formula
