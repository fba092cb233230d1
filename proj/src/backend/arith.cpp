// SPDX-License-Identifier: Apache-2.0
#include "idka/backend/arith.hpp"

#include "idka/errors.hpp"

namespace idka
{

namespace
{
mpz_class mod(const mpz_class& a, const mpz_class& m)
{
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

mpz_class inv_mod(const mpz_class& a, const mpz_class& m)
{
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw ValidationError("element is not invertible");
    return r;
}

void require_on_curve(const PairingParams& pp, const G1Point& a)
{
    if (!on_curve(pp, a))
        throw ValidationError("point is not on the curve");
}

void require_subgroup(const PairingParams& pp, const G1Point& a)
{
    if (!in_subgroup(pp, a))
        throw ValidationError("point is not in the order-q subgroup");
}

void require_gt(const PairingParams& pp, const GtElement& u)
{
    if (!gt_in_subgroup(pp, u))
        throw ValidationError("target element is not in the order-q subgroup");
}
}  // namespace

Scalar make_scalar(const PairingParams& pp, const mpz_class& v)
{
    return {mod(v, pp.q)};
}

Scalar scalar_add(const PairingParams& pp, const Scalar& a, const Scalar& b)
{
    return {mod(a.value + b.value, pp.q)};
}

Scalar scalar_sub(const PairingParams& pp, const Scalar& a, const Scalar& b)
{
    return {mod(a.value - b.value, pp.q)};
}

Scalar scalar_mul(const PairingParams& pp, const Scalar& a, const Scalar& b)
{
    return {mod(a.value * b.value, pp.q)};
}

Scalar scalar_neg(const PairingParams& pp, const Scalar& a)
{
    return {mod(-a.value, pp.q)};
}

Scalar scalar_inv(const PairingParams& pp, const Scalar& a)
{
    if (mod(a.value, pp.q) == 0)
        throw ValidationError("inverse of zero scalar");
    return {inv_mod(a.value, pp.q)};
}

bool on_curve(const PairingParams& pp, const G1Point& a)
{
    if (a.is_identity())
        return true;
    if (a.x < 0 || a.x >= pp.p || a.y < 0 || a.y >= pp.p)
        return false;
    return mod(a.y * a.y - a.x * a.x * a.x - a.x, pp.p) == 0;
}

bool in_subgroup(const PairingParams& pp, const G1Point& a)
{
    return on_curve(pp, a) && detail::mul_unchecked(pp.p, pp.q, a).is_identity();
}

G1Point g1_add(const PairingParams& pp, const G1Point& a, const G1Point& b)
{
    require_on_curve(pp, a);
    require_on_curve(pp, b);
    return detail::add_unchecked(pp.p, a, b);
}

G1Point g1_neg(const PairingParams& pp, const G1Point& a)
{
    require_on_curve(pp, a);
    if (a.is_identity())
        return a;
    return G1Point::affine(a.x, mod(-a.y, pp.p));
}

G1Point g1_mul(const PairingParams& pp, const Scalar& k, const G1Point& a)
{
    require_on_curve(pp, a);
    return detail::mul_unchecked(pp.p, k.value, a);
}

G1Point g1_mul_int(const PairingParams& pp, const mpz_class& k, const G1Point& a)
{
    require_on_curve(pp, a);
    return detail::mul_unchecked(pp.p, k, a);
}

GtElement gt_one()
{
    return {Fp2{1, 0}};
}

bool gt_in_subgroup(const PairingParams& pp, const GtElement& u)
{
    const auto& [re, im] = u.value;
    if (re < 0 || re >= pp.p || im < 0 || im >= pp.p)
        return false;
    if (re == 0 && im == 0)
        return false;
    return detail::fp2_pow(pp.p, u.value, pp.q) == Fp2{1, 0};
}

GtElement gt_mul(const PairingParams& pp, const GtElement& u, const GtElement& v)
{
    require_gt(pp, u);
    require_gt(pp, v);
    return {detail::fp2_mul(pp.p, u.value, v.value)};
}

GtElement gt_exp(const PairingParams& pp, const GtElement& u, const Scalar& k)
{
    require_gt(pp, u);
    return {detail::fp2_pow(pp.p, u.value, mod(k.value, pp.q))};
}

GtElement gt_inv(const PairingParams& pp, const GtElement& u)
{
    require_gt(pp, u);
    return {detail::fp2_inv(pp.p, u.value)};
}

GtElement pairing(const PairingParams& pp, const G1Point& a, const G1Point& b)
{
    require_subgroup(pp, a);
    require_subgroup(pp, b);
    return detail::pairing_unchecked(pp, a, b);
}

namespace detail
{

Fp2 fp2_mul(const mpz_class& p, const Fp2& a, const Fp2& b)
{
    return {mod(a.re * b.re - a.im * b.im, p), mod(a.re * b.im + a.im * b.re, p)};
}

Fp2 fp2_sqr(const mpz_class& p, const Fp2& a)
{
    return {mod((a.re + a.im) * (a.re - a.im), p), mod(2 * a.re * a.im, p)};
}

Fp2 fp2_inv(const mpz_class& p, const Fp2& a)
{
    // (a + bi)^-1 = (a - bi) / (a^2 + b^2)
    const mpz_class norm_inv = inv_mod(mod(a.re * a.re + a.im * a.im, p), p);
    return {mod(a.re * norm_inv, p), mod(-a.im * norm_inv, p)};
}

Fp2 fp2_pow(const mpz_class& p, const Fp2& a, const mpz_class& e)
{
    Fp2 result{1, 0};
    const auto nbits = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2));
    if (e == 0)
        return result;
    for (long i = nbits - 1; i >= 0; --i)
    {
        result = fp2_sqr(p, result);
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i)))
            result = fp2_mul(p, result, a);
    }
    return result;
}

G1Point add_unchecked(const mpz_class& p, const G1Point& a, const G1Point& b)
{
    if (a.is_identity())
        return b;
    if (b.is_identity())
        return a;
    mpz_class lambda;
    if (a.x == b.x)
    {
        if (mod(a.y + b.y, p) == 0)
            return G1Point::identity();
        // doubling on y^2 = x^3 + x
        lambda = mod((3 * a.x * a.x + 1) * inv_mod(2 * a.y, p), p);
    }
    else
    {
        lambda = mod((b.y - a.y) * inv_mod(mod(b.x - a.x, p), p), p);
    }
    mpz_class x3 = mod(lambda * lambda - a.x - b.x, p);
    mpz_class y3 = mod(lambda * (a.x - x3) - a.y, p);
    return G1Point::affine(std::move(x3), std::move(y3));
}

G1Point mul_unchecked(const mpz_class& p, const mpz_class& k, const G1Point& a)
{
    G1Point result;
    if (k <= 0 || a.is_identity())
        return result;
    const auto nbits = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2));
    for (long i = nbits - 1; i >= 0; --i)
    {
        result = add_unchecked(p, result, result);
        if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(i)))
            result = add_unchecked(p, result, a);
    }
    return result;
}

namespace
{
// Accumulated Miller function value, kept as numerator / denominator.
struct MillerValue
{
    Fp2 num{1, 0};
    Fp2 den{1, 0};
};

// Line through T with slope lambda evaluated at the distorted point (xq, i*yq):
// (i*yq - yT) - lambda*(xq - xT).
Fp2 line_value(const mpz_class& p, const G1Point& t, const mpz_class& lambda, const mpz_class& xq, const mpz_class& yq)
{
    return {mod(-t.y - lambda * (xq - t.x), p), yq};
}

Fp2 vertical_value(const mpz_class& p, const G1Point& t, const mpz_class& xq)
{
    if (t.is_identity())
        return {1, 0};
    return {mod(xq - t.x, p), 0};
}
}  // namespace

GtElement pairing_unchecked(const PairingParams& pp, const G1Point& a, const G1Point& b)
{
    if (a.is_identity() || b.is_identity())
        return gt_one();

    const mpz_class& p = pp.p;
    // phi(B) = (-xB, i*yB)
    const mpz_class xq = mod(-b.x, p);
    const mpz_class& yq = b.y;

    MillerValue f;
    G1Point t = a;
    const auto nbits = static_cast<long>(mpz_sizeinbase(pp.q.get_mpz_t(), 2));
    for (long i = nbits - 2; i >= 0; --i)
    {
        // doubling step
        f.num = fp2_sqr(p, f.num);
        f.den = fp2_sqr(p, f.den);
        if (t.y == 0)
        {
            f.num = fp2_mul(p, f.num, vertical_value(p, t, xq));
            t = G1Point::identity();
        }
        else
        {
            const mpz_class lambda = mod((3 * t.x * t.x + 1) * inv_mod(2 * t.y, p), p);
            f.num = fp2_mul(p, f.num, line_value(p, t, lambda, xq, yq));
            t = add_unchecked(p, t, t);
            f.den = fp2_mul(p, f.den, vertical_value(p, t, xq));
        }

        if (!mpz_tstbit(pp.q.get_mpz_t(), static_cast<mp_bitcnt_t>(i)))
            continue;

        // addition step
        if (t.x == a.x)
        {
            if (mod(t.y + a.y, p) == 0)
            {
                f.num = fp2_mul(p, f.num, vertical_value(p, t, xq));
                t = G1Point::identity();
                continue;
            }
            const mpz_class lambda = mod((3 * t.x * t.x + 1) * inv_mod(2 * t.y, p), p);
            f.num = fp2_mul(p, f.num, line_value(p, t, lambda, xq, yq));
        }
        else
        {
            const mpz_class lambda = mod((a.y - t.y) * inv_mod(mod(a.x - t.x, p), p), p);
            f.num = fp2_mul(p, f.num, line_value(p, t, lambda, xq, yq));
        }
        t = add_unchecked(p, t, a);
        f.den = fp2_mul(p, f.den, vertical_value(p, t, xq));
    }

    const Fp2 miller = fp2_mul(p, f.num, fp2_inv(p, f.den));
    return {fp2_pow(p, miller, pp.final_exponent)};
}

}  // namespace detail

}  // namespace idka
