// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "idka/backend/bytes.hpp"
#include "idka/backend/params.hpp"

namespace idka
{

enum class ValueKind
{
    scalar,
    g1,
    gt,
};

// Points: identity = 0x00, otherwise 0x04 || X || Y with each coordinate
// ceil(bits(p)/8) bytes big-endian. Target elements: re || im, same width.
// Scalars: ceil(bits(q)/8) bytes big-endian.

Bytes encode(const PairingParams& pp, const G1Point& a);
Bytes encode(const PairingParams& pp, const GtElement& u);
Bytes encode(const PairingParams& pp, const Scalar& k);
Bytes encode(const PairingParams& pp, const Value& v);

G1Point decode_g1(const PairingParams& pp, ByteView bytes);
GtElement decode_gt(const PairingParams& pp, ByteView bytes);
Scalar decode_scalar(const PairingParams& pp, ByteView bytes);
Value decode(const PairingParams& pp, ByteView bytes, ValueKind kind);

ValueKind kind_of(const Value& v);

}  // namespace idka
