// SPDX-License-Identifier: Apache-2.0
#pragma once

// Reference arithmetic for the tiny tier (p < 2^31) in plain machine integers.
// Shares no code with the library: used to cross-check pairing values and to
// recover exponents by exhaustive search.

#include "idka/backend/params.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace oracle
{

using i64 = std::int64_t;
using i128 = __int128;

struct Field
{
    i64 p;

    [[nodiscard]] i64 norm(i128 v) const
    {
        v %= p;
        return static_cast<i64>(v < 0 ? v + p : v);
    }
    [[nodiscard]] i64 mul(i64 a, i64 b) const { return norm(static_cast<i128>(a) * b); }
    [[nodiscard]] i64 pow(i64 a, i64 e) const
    {
        i64 r = 1;
        a = norm(a);
        while (e > 0)
        {
            if (e & 1)
                r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    [[nodiscard]] i64 inv(i64 a) const { return pow(a, p - 2); }
};

struct Point
{
    bool inf = true;
    i64 x = 0;
    i64 y = 0;

    friend bool operator==(const Point&, const Point&) = default;
};

struct F2
{
    i64 re = 0;
    i64 im = 0;

    friend bool operator==(const F2&, const F2&) = default;
};

inline i64 small(const mpz_class& v)
{
    if (!v.fits_slong_p())
        throw std::invalid_argument("oracle: value exceeds machine range");
    return v.get_si();
}

inline Point from(const idka::G1Point& a)
{
    if (a.infinity)
        return {};
    return {false, small(a.x), small(a.y)};
}

inline F2 from(const idka::GtElement& u)
{
    return {small(u.value.re), small(u.value.im)};
}

/// y^2 = x^3 + x over F_p.
struct Curve
{
    Field f;
    i64 q;

    explicit Curve(const idka::PairingParams& pp) : f{small(pp.p)}, q{small(pp.q)}
    {
        if (pp.p >= (mpz_class(1) << 31))
            throw std::invalid_argument("oracle handles the tiny tier only");
    }

    [[nodiscard]] Point add(const Point& a, const Point& b) const
    {
        if (a.inf)
            return b;
        if (b.inf)
            return a;
        i64 lambda;
        if (a.x == b.x)
        {
            if (f.norm(static_cast<i128>(a.y) + b.y) == 0)
                return {};
            lambda = f.mul(f.norm(3 * f.mul(a.x, a.x) + 1), f.inv(f.norm(2 * static_cast<i128>(a.y))));
        }
        else
        {
            lambda = f.mul(f.norm(static_cast<i128>(b.y) - a.y), f.inv(f.norm(static_cast<i128>(b.x) - a.x)));
        }
        const i64 x3 = f.norm(static_cast<i128>(f.mul(lambda, lambda)) - a.x - b.x);
        const i64 y3 = f.norm(static_cast<i128>(f.mul(lambda, f.norm(static_cast<i128>(a.x) - x3))) - a.y);
        return {false, x3, y3};
    }

    [[nodiscard]] Point mul(i64 k, Point a) const
    {
        Point r;
        while (k > 0)
        {
            if (k & 1)
                r = add(r, a);
            a = add(a, a);
            k >>= 1;
        }
        return r;
    }

    [[nodiscard]] F2 fmul(const F2& a, const F2& b) const
    {
        const i128 re = static_cast<i128>(a.re) * b.re - static_cast<i128>(a.im) * b.im;
        const i128 im = static_cast<i128>(a.re) * b.im + static_cast<i128>(a.im) * b.re;
        return {f.norm(re), f.norm(im)};
    }
    [[nodiscard]] F2 finv(const F2& a) const
    {
        const i64 n = f.inv(f.norm(static_cast<i128>(a.re) * a.re + static_cast<i128>(a.im) * a.im));
        return {f.mul(a.re, n), f.mul(f.norm(-static_cast<i128>(a.im)), n)};
    }
    [[nodiscard]] F2 fpow(F2 a, i64 e) const
    {
        F2 r{1, 0};
        while (e > 0)
        {
            if (e & 1)
                r = fmul(r, a);
            a = fmul(a, a);
            e >>= 1;
        }
        return r;
    }

    /// Reduced Tate pairing t(A, phi(B)) with phi(x, y) = (-x, iy), by a textbook Miller loop.
    [[nodiscard]] F2 pairing(const Point& A, const Point& B) const
    {
        if (A.inf || B.inf)
            return {1, 0};
        const i64 rx = f.norm(-static_cast<i128>(B.x));
        // line of slope lambda through T, at phi(B)
        auto line = [&](const Point& T, i64 lambda) {
            return F2{f.norm(-static_cast<i128>(T.y) - f.mul(lambda, f.norm(static_cast<i128>(rx) - T.x))), B.y};
        };
        auto vertical = [&](const Point& V) { return F2{f.norm(static_cast<i128>(rx) - V.x), 0}; };

        F2 num{1, 0};
        F2 den{1, 0};
        Point T = A;
        int top = 62;
        while (!((q >> top) & 1))
            --top;
        for (int bit = top - 1; bit >= 0; --bit)
        {
            const i64 lambda = f.mul(f.norm(3 * static_cast<i128>(f.mul(T.x, T.x)) + 1), f.inv(f.norm(2 * static_cast<i128>(T.y))));
            num = fmul(fmul(num, num), line(T, lambda));
            T = add(T, T);
            den = fmul(fmul(den, den), vertical(T));
            if (!((q >> bit) & 1))
                continue;
            if (T.x == A.x)
            {
                // T + A = O: the chord is the vertical through A
                num = fmul(num, vertical(A));
                T = {};
                continue;
            }
            const i64 mu = f.mul(f.norm(static_cast<i128>(A.y) - T.y), f.inv(f.norm(static_cast<i128>(A.x) - T.x)));
            num = fmul(num, line(T, mu));
            T = add(T, A);
            den = fmul(den, vertical(T));
        }
        const F2 value = fmul(num, finv(den));
        const i128 e = (static_cast<i128>(f.p) * f.p - 1) / q;
        return fpow(value, static_cast<i64>(e));
    }

    /// Smallest k in [0, q) with k*base == target, by linear scan.
    [[nodiscard]] std::optional<i64> dlog(const Point& base, const Point& target) const
    {
        Point acc;
        for (i64 k = 0; k < q; ++k)
        {
            if (acc == target)
                return k;
            acc = add(acc, base);
        }
        return std::nullopt;
    }

    [[nodiscard]] std::optional<i64> dlog(const F2& base, const F2& target) const
    {
        F2 acc{1, 0};
        for (i64 k = 0; k < q; ++k)
        {
            if (acc == target)
                return k;
            acc = fmul(acc, base);
        }
        return std::nullopt;
    }
};

}  // namespace oracle
