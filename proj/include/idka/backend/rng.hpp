// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "idka/backend/bytes.hpp"

#include <gmpxx.h>

namespace idka
{

/// Seedable source of uniform integers. Two instances built from the same seed
/// produce identical streams; unseeded instances draw their seed from the OS.
class Rng
{
public:
    Rng();
    explicit Rng(ByteView seed);

    Rng(const Rng&) = delete;
    Rng& operator=(const Rng&) = delete;

    /// Uniform in [0, bound).
    mpz_class below(const mpz_class& bound);

    /// Uniform in [lo, hi).
    mpz_class between(const mpz_class& lo, const mpz_class& hi);

    mpz_class bits(unsigned long count);

    Bytes bytes(std::size_t count);

private:
    gmp_randclass state_;
};

}  // namespace idka
