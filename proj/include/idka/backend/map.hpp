// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "idka/backend/params.hpp"

namespace idka
{

/// Identity hash H: try-and-increment onto E(F_p), then cofactor clearing.
/// Total and deterministic; the result always has exact order q.
G1Point hash_to_g1(const PairingParams& pp, ByteView id);

/// Identity hash H' onto Z_q^*: never returns zero.
Scalar hash_to_zq(const PairingParams& pp, ByteView data);

}  // namespace idka
