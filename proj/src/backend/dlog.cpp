// SPDX-License-Identifier: Apache-2.0
#include "idka/backend/dlog.hpp"

#include "idka/backend/arith.hpp"
#include "idka/backend/encoding.hpp"
#include "idka/errors.hpp"

#include <map>

namespace idka
{

namespace
{
// Baby-step giant-step over a group given by (identity, op, encode). The
// group order is q < 2^16, so the table has at most 256 entries.
template <typename T, typename Op>
Scalar bsgs(const PairingParams& pp, const T& target, const T& base, const T& identity, Op op)
{
    if (pp.tier != Tier::tiny)
        throw ParamError("brute-force discrete log is only available on tiny parameters");

    mpz_class m_z;
    mpz_sqrt(m_z.get_mpz_t(), pp.q.get_mpz_t());
    const unsigned long m = m_z.get_ui() + 1;

    std::map<Bytes, unsigned long> baby;
    T cur = identity;
    for (unsigned long j = 0; j < m; ++j)
    {
        baby.emplace(encode(pp, cur), j);
        cur = op(cur, base);
    }
    // cur == base^m; giant step multiplies by base^-m
    T giant = identity;
    {
        // base^(q - m) = base^-m
        T acc = identity;
        mpz_class e = pp.q - m;
        T b = base;
        while (e > 0)
        {
            if (mpz_odd_p(e.get_mpz_t()))
                acc = op(acc, b);
            b = op(b, b);
            e >>= 1;
        }
        giant = acc;
    }

    T gamma = target;
    for (unsigned long i = 0; i <= m; ++i)
    {
        if (auto it = baby.find(encode(pp, gamma)); it != baby.end())
            return make_scalar(pp, mpz_class{i} * m + it->second);
        gamma = op(gamma, giant);
    }
    throw ValidationError("discrete logarithm does not exist");
}
}  // namespace

Scalar brute_force_dlog(const PairingParams& pp, const G1Point& target, const G1Point& base)
{
    if (!in_subgroup(pp, target) || !in_subgroup(pp, base))
        throw ValidationError("dlog operands must lie in the order-q subgroup");
    return bsgs(pp, target, base, G1Point::identity(),
        [&](const G1Point& a, const G1Point& b) { return detail::add_unchecked(pp.p, a, b); });
}

Scalar brute_force_dlog(const PairingParams& pp, const GtElement& target, const GtElement& base)
{
    if (!gt_in_subgroup(pp, target) || !gt_in_subgroup(pp, base))
        throw ValidationError("dlog operands must lie in the order-q subgroup");
    return bsgs(pp, target, base, gt_one(),
        [&](const GtElement& a, const GtElement& b) { return GtElement{detail::fp2_mul(pp.p, a.value, b.value)}; });
}

}  // namespace idka
