// SPDX-License-Identifier: Apache-2.0
#include "idka/backend/rng.hpp"

#include "idka/backend/hash.hpp"

#include <random>

namespace idka
{

namespace
{
mpz_class seed_integer(ByteView seed)
{
    // Hashing makes seeds of any length (including empty) usable and keeps
    // "01" and "0001" distinct.
    const auto d = sha256(seed);
    return int_from_bytes(d);
}
}  // namespace

Rng::Rng() : state_{gmp_randinit_mt}
{
    std::random_device rd;
    Bytes seed(32);
    for (auto& b : seed)
        b = static_cast<std::uint8_t>(rd());
    state_.seed(seed_integer(seed));
}

Rng::Rng(ByteView seed) : state_{gmp_randinit_mt}
{
    state_.seed(seed_integer(seed));
}

mpz_class Rng::below(const mpz_class& bound)
{
    return state_.get_z_range(bound);
}

mpz_class Rng::between(const mpz_class& lo, const mpz_class& hi)
{
    return lo + state_.get_z_range(hi - lo);
}

mpz_class Rng::bits(unsigned long count)
{
    return state_.get_z_bits(count);
}

Bytes Rng::bytes(std::size_t count)
{
    return int_to_bytes(state_.get_z_bits(count * 8), count);
}

}  // namespace idka
