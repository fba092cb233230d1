// SPDX-License-Identifier: Apache-2.0
#include "idka/backend/map.hpp"

#include "idka/backend/arith.hpp"
#include "idka/backend/hash.hpp"
#include "idka/errors.hpp"

namespace idka
{

G1Point hash_to_g1(const PairingParams& pp, ByteView id)
{
    const mpz_class sqrt_exp = (pp.p + 1) / 4;
    // 16 extra bytes keep the reduction mod p close to uniform.
    const std::size_t width = pp.field_bytes + 16;
    for (std::uint32_t counter = 0;; ++counter)
    {
        Bytes input(id.begin(), id.end());
        for (int shift = 24; shift >= 0; shift -= 8)
            input.push_back(static_cast<std::uint8_t>(counter >> shift));

        const auto wide = expand_hash("idka/H1", input, width + 1);
        const mpz_class x = int_from_bytes(ByteView{wide}.subspan(1)) % pp.p;
        const mpz_class rhs = (x * x * x + x) % pp.p;
        if (rhs == 0 || mpz_legendre(rhs.get_mpz_t(), pp.p.get_mpz_t()) != 1)
            continue;

        mpz_class y;
        mpz_powm(y.get_mpz_t(), rhs.get_mpz_t(), sqrt_exp.get_mpz_t(), pp.p.get_mpz_t());
        if ((wide[0] & 1) != mpz_odd_p(y.get_mpz_t()))
            y = pp.p - y;

        auto point = detail::mul_unchecked(pp.p, pp.cofactor, G1Point::affine(x, y));
        if (!point.is_identity())
            return point;
    }
}

Scalar hash_to_zq(const PairingParams& pp, ByteView data)
{
    const auto wide = expand_hash("idka/H2", data, pp.scalar_bytes + 16);
    return {int_from_bytes(wide) % (pp.q - 1) + 1};
}

}  // namespace idka
