// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "idka/backend/params.hpp"

namespace idka
{

/// k with k*base == target. Tiny tier only; throws ParamError otherwise and
/// ValidationError when no solution exists.
Scalar brute_force_dlog(const PairingParams& pp, const G1Point& target, const G1Point& base);

/// k with base^k == target.
Scalar brute_force_dlog(const PairingParams& pp, const GtElement& target, const GtElement& base);

}  // namespace idka
