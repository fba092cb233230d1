// SPDX-License-Identifier: Apache-2.0
#include "idka/formula/equivalence.hpp"

#include "idka/backend/arith.hpp"
#include "idka/backend/dlog.hpp"
#include "idka/backend/map.hpp"
#include "idka/errors.hpp"

namespace idka::formula
{

namespace
{
Scalar nonzero(const PairingParams& pp, Rng& rng)
{
    return {rng.between(1, pp.q)};
}

std::string random_id(Rng& rng)
{
    return "id-" + to_hex(rng.bytes(8));
}

bool components_correspond(const PairingParams& pp, const Value& dh, const Value& id, const Scalar& c)
{
    const auto* dh_point = std::get_if<G1Point>(&dh);
    if (!dh_point)
        return false;
    if (const auto* id_point = std::get_if<G1Point>(&id))
        return *id_point == *dh_point;
    const auto* id_target = std::get_if<GtElement>(&id);
    if (!id_target)
        return false;

    const auto& P = pp.generator;
    if (pp.tier == Tier::tiny)
    {
        const auto base = pairing(pp, P, P);
        const auto lhs = brute_force_dlog(pp, *id_target, base);
        const auto rhs = scalar_mul(pp, c, brute_force_dlog(pp, *dh_point, P));
        return lhs == rhs;
    }
    return *id_target == gt_exp(pp, pairing(pp, *dh_point, P), c);
}
}  // namespace

Assignment random_assignment(const PairingParams& pp, RuleSet setting, Rng& rng)
{
    const auto& P = pp.generator;
    Assignment env;
    env["P"] = P;
    for (;;)
    {
        const auto s = nonzero(pp, rng);
        const auto id_a = random_id(rng);
        const auto id_b = random_id(rng);

        Scalar a;
        Scalar b;
        if (setting == RuleSet::sok)
        {
            const auto Qa = hash_to_g1(pp, to_bytes(id_a));
            const auto Qb = hash_to_g1(pp, to_bytes(id_b));
            if (pp.tier == Tier::tiny)
            {
                a = brute_force_dlog(pp, Qa, P);
                b = brute_force_dlog(pp, Qb, P);
                env["Q_A"] = Qa;
                env["Q_B"] = Qb;
            }
            else
            {
                // discrete logs of hashed points are out of reach; use known-dlog keys
                a = nonzero(pp, rng);
                b = nonzero(pp, rng);
                env["Q_A"] = g1_mul(pp, a, P);
                env["Q_B"] = g1_mul(pp, b, P);
            }
            env["S_A"] = g1_mul(pp, s, std::get<G1Point>(env["Q_A"]));
            env["S_B"] = g1_mul(pp, s, std::get<G1Point>(env["Q_B"]));
        }
        else
        {
            const auto u_a = hash_to_zq(pp, to_bytes(id_a));
            const auto u_b = hash_to_zq(pp, to_bytes(id_b));
            a = scalar_add(pp, s, u_a);
            b = scalar_add(pp, s, u_b);
            if (a.value == 0 || b.value == 0)
                continue;
            env["u_A"] = u_a;
            env["u_B"] = u_b;
            env["Q_A"] = g1_mul(pp, a, P);
            env["Q_B"] = g1_mul(pp, b, P);
            env["S_A"] = g1_mul(pp, scalar_inv(pp, a), P);
            env["S_B"] = g1_mul(pp, scalar_inv(pp, b), P);
        }
        env["s"] = s;
        env["a"] = a;
        env["b"] = b;
        env["P_0"] = g1_mul(pp, s, P);
        env["F_AB"] = g1_mul(pp, a, std::get<G1Point>(env["Q_B"]));
        break;
    }
    for (const char* name : {"x", "y", "h_A", "h_B"})
        env[name] = nonzero(pp, rng);
    env["T_A"] = g1_mul(pp, nonzero(pp, rng), P);
    env["T_B"] = g1_mul(pp, nonzero(pp, rng), P);
    for (const char* name : {"Q", "Q_1", "Q_2"})
        env[name] = g1_mul(pp, nonzero(pp, rng), P);
    return env;
}

bool semantic_equiv(const PairingParams& pp, const SecretFormula& f, const SecretFormula& g, RuleSet setting,
    EquivMode mode, unsigned trials, Rng& rng)
{
    if (trials == 0)
        throw ConfigError("semantic_equiv needs at least one trial");
    if (f.components.size() != g.components.size())
        return false;

    unsigned done = 0;
    unsigned skipped = 0;
    while (done < trials)
    {
        const auto env = random_assignment(pp, setting, rng);
        std::vector<Value> vf;
        std::vector<Value> vg;
        try
        {
            vf = evaluate(pp, f, env);
            vg = evaluate(pp, g, env);
        }
        catch (const ValidationError&)
        {
            // an inverse hit zero under this assignment; draw another
            if (++skipped > 10 * trials + 100)
                throw;
            continue;
        }
        ++done;

        const Scalar c = setting == RuleSet::sok ? std::get<Scalar>(env.at("s")) : Scalar{1};
        for (std::size_t i = 0; i < vf.size(); ++i)
        {
            const bool ok = mode == EquivMode::plain ? vf[i] == vg[i] : components_correspond(pp, vf[i], vg[i], c);
            if (!ok)
                return false;
        }
    }
    return true;
}

}  // namespace idka::formula
