// SPDX-License-Identifier: Apache-2.0
#include "idka/backend/params.hpp"

#include "idka/backend/arith.hpp"
#include "idka/backend/encoding.hpp"
#include "idka/backend/hash.hpp"
#include "idka/backend/rng.hpp"
#include "idka/errors.hpp"

#include <fstream>

namespace idka
{

namespace
{
constexpr int prime_reps = 30;
constexpr int max_attempts = 20000;

bool is_prime(const mpz_class& n)
{
    return mpz_probab_prime_p(n.get_mpz_t(), prime_reps) > 0;
}

mpz_class next_prime(const mpz_class& n)
{
    mpz_class r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

mpz_class pow2(unsigned long e)
{
    mpz_class r = 1;
    r <<= e;
    return r;
}

// Random point of E(F_p), cofactor-cleared until it is a non-identity point of order q.
G1Point find_generator(const mpz_class& p, const mpz_class& cofactor, Rng& rng)
{
    const mpz_class sqrt_exp = (p + 1) / 4;
    for (int attempt = 0; attempt < max_attempts; ++attempt)
    {
        const mpz_class x = rng.below(p);
        const mpz_class rhs = (x * x * x + x) % p;
        if (rhs == 0 || mpz_legendre(rhs.get_mpz_t(), p.get_mpz_t()) != 1)
            continue;
        mpz_class y;
        mpz_powm(y.get_mpz_t(), rhs.get_mpz_t(), sqrt_exp.get_mpz_t(), p.get_mpz_t());
        auto g = detail::mul_unchecked(p, cofactor, G1Point::affine(x, y));
        if (!g.is_identity())
            return g;
    }
    throw ParamError("generator search exhausted its attempt budget");
}
}  // namespace

std::string_view to_string(Tier tier)
{
    return tier == Tier::tiny ? "tiny" : "demo";
}

Tier tier_from_string(std::string_view name)
{
    if (name == "tiny")
        return Tier::tiny;
    if (name == "demo")
        return Tier::demo;
    throw ParamError("unknown tier '" + std::string{name} + "'");
}

PairingParams PairingParams::make(Tier tier, mpz_class p, mpz_class q, mpz_class cofactor, G1Point generator)
{
    PairingParams pp;
    pp.tier = tier;
    pp.p = std::move(p);
    pp.q = std::move(q);
    pp.cofactor = std::move(cofactor);
    pp.generator = std::move(generator);

    if (pp.p < 7 || !is_prime(pp.p))
        throw ParamError("p is not prime");
    if (pp.p % 4 != 3)
        throw ParamError("p is not 3 mod 4");
    if (pp.q < 3 || !is_prime(pp.q))
        throw ParamError("q is not prime");
    if (pp.cofactor * pp.q != pp.p + 1)
        throw ParamError("cofactor * q differs from the curve order p + 1");
    if (pp.cofactor % pp.q == 0)
        throw ParamError("q^2 divides the curve order");
    if (tier == Tier::tiny && pp.q >= pow2(16))
        throw ParamError("tiny tier requires q < 2^16");
    if (tier == Tier::demo && pp.q < pow2(160))
        throw ParamError("demo tier requires q >= 2^160");

    pp.final_exponent = (pp.p * pp.p - 1) / pp.q;
    pp.field_bytes = byte_width(pp.p);
    pp.scalar_bytes = byte_width(pp.q);

    if (pp.generator.is_identity() || !in_subgroup(pp, pp.generator))
        throw ParamError("generator does not have order q");
    return pp;
}

PairingParams param_gen(Tier tier, ByteView seed)
{
    Rng rng{seed};
    for (int attempt = 0; attempt < max_attempts; ++attempt)
    {
        mpz_class q;
        mpz_class k_lo;
        mpz_class k_hi;
        if (tier == Tier::tiny)
        {
            q = next_prime(rng.between(pow2(14), pow2(16) - 32));
            if (q >= pow2(16))
                continue;
            k_lo = pow2(6);
            k_hi = pow2(10);
        }
        else
        {
            q = next_prime(pow2(160) + rng.bits(158));
            k_lo = pow2(349);
            k_hi = pow2(350);
        }

        for (int j = 0; j < 4000; ++j)
        {
            const mpz_class cofactor = 4 * rng.between(k_lo, k_hi);
            if (cofactor % q == 0)
                continue;
            const mpz_class p = cofactor * q - 1;
            if (!is_prime(p))
                continue;
            auto g = find_generator(p, cofactor, rng);
            return PairingParams::make(tier, p, q, cofactor, std::move(g));
        }
    }
    throw ParamError("parameter search exhausted its attempt budget");
}

nlohmann::json params_to_json(const PairingParams& pp)
{
    return {
        {"tier", to_string(pp.tier)},
        {"p", int_to_hex(pp.p)},
        {"q", int_to_hex(pp.q)},
        {"cofactor", int_to_hex(pp.cofactor)},
        {"generator", to_hex(encode(pp, pp.generator))},
        {"hash_name", hash_name},
    };
}

PairingParams params_from_json(const nlohmann::json& j)
{
    try
    {
        if (j.at("hash_name").get<std::string>() != hash_name)
            throw ParamError("unsupported hash '" + j.at("hash_name").get<std::string>() + "'");
        const auto tier = tier_from_string(j.at("tier").get<std::string>());
        const auto p = int_from_hex(j.at("p").get<std::string>());
        const auto q = int_from_hex(j.at("q").get<std::string>());
        const auto cofactor = int_from_hex(j.at("cofactor").get<std::string>());
        const auto gen = from_hex(j.at("generator").get<std::string>());

        const auto w = byte_width(p);
        if (gen.size() != 1 + 2 * w || gen[0] != 0x04)
            throw ParamError("malformed generator encoding");
        auto g = G1Point::affine(int_from_bytes(ByteView{gen}.subspan(1, w)), int_from_bytes(ByteView{gen}.subspan(1 + w)));
        return PairingParams::make(tier, p, q, cofactor, std::move(g));
    }
    catch (const nlohmann::json::exception& e)
    {
        throw ParamError(std::string{"malformed parameter file: "} + e.what());
    }
    catch (const std::invalid_argument& e)
    {
        throw ParamError(std::string{"malformed parameter file: "} + e.what());
    }
}

PairingParams load_params(const std::string& path)
{
    std::ifstream in{path};
    if (!in)
        throw ParamError("cannot open parameter file '" + path + "'");
    nlohmann::json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::exception& e)
    {
        throw ParamError("parameter file '" + path + "' is not JSON: " + e.what());
    }
    return params_from_json(j);
}

void save_params(const PairingParams& params, const std::string& path)
{
    std::ofstream out{path};
    if (!out)
        throw ParamError("cannot write parameter file '" + path + "'");
    out << params_to_json(params).dump(2) << '\n';
}

}  // namespace idka
