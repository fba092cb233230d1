// SPDX-License-Identifier: Apache-2.0
#include "idka/backend/bytes.hpp"

#include <stdexcept>

namespace idka
{

std::string to_hex(ByteView data)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (auto b : data)
    {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

namespace
{
int nibble(char c)
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    throw std::invalid_argument("invalid hex digit");
}
}  // namespace

Bytes from_hex(std::string_view hex)
{
    if (hex.size() % 2 != 0)
        throw std::invalid_argument("odd-length hex string");
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
    return out;
}

Bytes to_bytes(std::string_view s)
{
    return {s.begin(), s.end()};
}

Bytes int_to_bytes(const mpz_class& value, std::size_t width)
{
    if (value < 0)
        throw std::invalid_argument("negative integer");
    const std::size_t needed = value == 0 ? 0 : (mpz_sizeinbase(value.get_mpz_t(), 2) + 7) / 8;
    if (needed > width)
        throw std::length_error("integer does not fit the requested width");
    Bytes out(width, 0);
    std::size_t count = 0;
    mpz_export(out.data() + (width - needed), &count, 1, 1, 1, 0, value.get_mpz_t());
    return out;
}

mpz_class int_from_bytes(ByteView data)
{
    mpz_class r;
    if (!data.empty())
        mpz_import(r.get_mpz_t(), data.size(), 1, 1, 1, 0, data.data());
    return r;
}

std::size_t byte_width(const mpz_class& modulus)
{
    return (mpz_sizeinbase(modulus.get_mpz_t(), 2) + 7) / 8;
}

std::string int_to_hex(const mpz_class& value)
{
    return value.get_str(16);
}

mpz_class int_from_hex(std::string_view hex)
{
    if (hex.empty())
        throw std::invalid_argument("empty hex integer");
    for (char c : hex)
        nibble(c);
    return mpz_class{std::string{hex}, 16};
}

void append(Bytes& out, ByteView data)
{
    out.insert(out.end(), data.begin(), data.end());
}

void append_framed(Bytes& out, ByteView data)
{
    const auto n = static_cast<std::uint32_t>(data.size());
    out.push_back(static_cast<std::uint8_t>(n >> 24));
    out.push_back(static_cast<std::uint8_t>(n >> 16));
    out.push_back(static_cast<std::uint8_t>(n >> 8));
    out.push_back(static_cast<std::uint8_t>(n));
    append(out, data);
}

}  // namespace idka
