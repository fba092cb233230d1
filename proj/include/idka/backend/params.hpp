// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "idka/backend/bytes.hpp"
#include "idka/backend/types.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace idka
{

enum class Tier
{
    tiny,  ///< q < 2^16: discrete logs can be brute forced.
    demo,  ///< q >= 2^160: representative sizes, no security claim.
};

std::string_view to_string(Tier tier);
Tier tier_from_string(std::string_view name);

/// Supersingular curve y^2 = x^3 + x over F_p, p = 3 (mod 4), #E(F_p) = p + 1 = cofactor * q.
/// Immutable once built.
struct PairingParams
{
    Tier tier = Tier::tiny;
    mpz_class p;
    mpz_class q;
    mpz_class cofactor;
    G1Point generator;

    /// Exponent of the final exponentiation, (p^2 - 1) / q.
    mpz_class final_exponent;
    std::size_t field_bytes = 0;
    std::size_t scalar_bytes = 0;

    /// Builds derived fields and checks every invariant; throws ParamError.
    static PairingParams make(Tier tier, mpz_class p, mpz_class q, mpz_class cofactor, G1Point generator);

    friend bool operator==(const PairingParams& a, const PairingParams& b)
    {
        return a.tier == b.tier && a.p == b.p && a.q == b.q && a.cofactor == b.cofactor &&
               a.generator == b.generator;
    }
};

/// Deterministic in the seed. Throws ParamError when the bounded search fails.
PairingParams param_gen(Tier tier, ByteView seed);

nlohmann::json params_to_json(const PairingParams& params);
PairingParams params_from_json(const nlohmann::json& j);

PairingParams load_params(const std::string& path);
void save_params(const PairingParams& params, const std::string& path);

}  // namespace idka
