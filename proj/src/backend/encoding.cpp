// SPDX-License-Identifier: Apache-2.0
#include "idka/backend/encoding.hpp"

#include "idka/backend/arith.hpp"
#include "idka/errors.hpp"

namespace idka
{

Bytes encode(const PairingParams& pp, const G1Point& a)
{
    if (a.is_identity())
        return {0x00};
    Bytes out{0x04};
    append(out, int_to_bytes(a.x, pp.field_bytes));
    append(out, int_to_bytes(a.y, pp.field_bytes));
    return out;
}

Bytes encode(const PairingParams& pp, const GtElement& u)
{
    Bytes out = int_to_bytes(u.value.re, pp.field_bytes);
    append(out, int_to_bytes(u.value.im, pp.field_bytes));
    return out;
}

Bytes encode(const PairingParams& pp, const Scalar& k)
{
    return int_to_bytes(k.value, pp.scalar_bytes);
}

Bytes encode(const PairingParams& pp, const Value& v)
{
    return std::visit([&](const auto& x) { return encode(pp, x); }, v);
}

G1Point decode_g1(const PairingParams& pp, ByteView bytes)
{
    if (bytes.empty())
        throw DecodeError(DecodeError::Kind::length, "empty point encoding");
    if (bytes[0] == 0x00)
    {
        if (bytes.size() != 1)
            throw DecodeError(DecodeError::Kind::length, "identity encoding must be a single byte");
        return G1Point::identity();
    }
    if (bytes.size() != 1 + 2 * pp.field_bytes)
        throw DecodeError(DecodeError::Kind::length, "point encoding has the wrong length");
    if (bytes[0] != 0x04)
        throw DecodeError(DecodeError::Kind::format, "unknown point encoding prefix");

    auto x = int_from_bytes(bytes.subspan(1, pp.field_bytes));
    auto y = int_from_bytes(bytes.subspan(1 + pp.field_bytes));
    if (x >= pp.p || y >= pp.p)
        throw DecodeError(DecodeError::Kind::range, "point coordinate is not reduced mod p");
    auto point = G1Point::affine(std::move(x), std::move(y));
    if (!on_curve(pp, point))
        throw DecodeError(DecodeError::Kind::off_curve, "point is not on the curve");
    if (!in_subgroup(pp, point))
        throw DecodeError(DecodeError::Kind::subgroup, "point is not in the order-q subgroup");
    return point;
}

GtElement decode_gt(const PairingParams& pp, ByteView bytes)
{
    if (bytes.size() != 2 * pp.field_bytes)
        throw DecodeError(DecodeError::Kind::length, "target element encoding has the wrong length");
    GtElement u{Fp2{int_from_bytes(bytes.subspan(0, pp.field_bytes)), int_from_bytes(bytes.subspan(pp.field_bytes))}};
    if (u.value.re >= pp.p || u.value.im >= pp.p)
        throw DecodeError(DecodeError::Kind::range, "target coordinate is not reduced mod p");
    if (!gt_in_subgroup(pp, u))
        throw DecodeError(DecodeError::Kind::subgroup, "target element is not in the order-q subgroup");
    return u;
}

Scalar decode_scalar(const PairingParams& pp, ByteView bytes)
{
    if (bytes.size() != pp.scalar_bytes)
        throw DecodeError(DecodeError::Kind::length, "scalar encoding has the wrong length");
    auto v = int_from_bytes(bytes);
    if (v >= pp.q)
        throw DecodeError(DecodeError::Kind::range, "scalar is not reduced mod q");
    return {std::move(v)};
}

Value decode(const PairingParams& pp, ByteView bytes, ValueKind kind)
{
    switch (kind)
    {
    case ValueKind::scalar:
        return decode_scalar(pp, bytes);
    case ValueKind::g1:
        return decode_g1(pp, bytes);
    case ValueKind::gt:
        return decode_gt(pp, bytes);
    }
    throw DecodeError(DecodeError::Kind::format, "unknown value kind");
}

ValueKind kind_of(const Value& v)
{
    switch (v.index())
    {
    case 0:
        return ValueKind::scalar;
    case 1:
        return ValueKind::g1;
    default:
        return ValueKind::gt;
    }
}

}  // namespace idka
