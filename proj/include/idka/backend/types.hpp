// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <compare>
#include <variant>

namespace idka
{

/// Integer mod q. Values are kept reduced into [0, q).
struct Scalar
{
    mpz_class value;

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.value == b.value; }
};

/// Element a + b·i of F_{p^2} with i^2 = -1.
struct Fp2
{
    mpz_class re;
    mpz_class im;

    friend bool operator==(const Fp2& a, const Fp2& b) { return a.re == b.re && a.im == b.im; }
};

/// Affine point of E(F_p): y^2 = x^3 + x, or the point at infinity.
struct G1Point
{
    bool infinity = true;
    mpz_class x;
    mpz_class y;

    static G1Point identity() { return {}; }
    static G1Point affine(mpz_class x, mpz_class y) { return {false, std::move(x), std::move(y)}; }

    [[nodiscard]] bool is_identity() const noexcept { return infinity; }

    friend bool operator==(const G1Point& a, const G1Point& b)
    {
        if (a.infinity || b.infinity)
            return a.infinity == b.infinity;
        return a.x == b.x && a.y == b.y;
    }
};

/// Element of the order-q subgroup of F_{p^2}^*. The target group of the pairing
/// (written G_2 multiplicatively in older literature, G_T in newer).
struct GtElement
{
    Fp2 value;

    friend bool operator==(const GtElement& a, const GtElement& b) { return a.value == b.value; }
};

/// Any value a session-secret formula can produce or consume.
using Value = std::variant<Scalar, G1Point, GtElement>;

}  // namespace idka
