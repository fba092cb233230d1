// SPDX-License-Identifier: Apache-2.0
#include "idka/backend/hash.hpp"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

namespace idka
{

namespace
{
struct MdCtxDeleter
{
    void operator()(EVP_MD_CTX* ctx) const noexcept { EVP_MD_CTX_free(ctx); }
};

class Sha256
{
public:
    Sha256() : ctx_{EVP_MD_CTX_new()}
    {
        if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1)
            throw std::runtime_error("SHA-256 initialisation failed");
    }

    void update(ByteView data)
    {
        if (EVP_DigestUpdate(ctx_.get(), data.data(), data.size()) != 1)
            throw std::runtime_error("SHA-256 update failed");
    }

    Digest finish()
    {
        Digest out{};
        unsigned int len = 0;
        if (EVP_DigestFinal_ex(ctx_.get(), out.data(), &len) != 1 || len != out.size())
            throw std::runtime_error("SHA-256 finalisation failed");
        return out;
    }

private:
    std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx_;
};
}  // namespace

Digest sha256(ByteView data)
{
    Sha256 h;
    h.update(data);
    return h.finish();
}

Bytes expand_hash(std::string_view tag, ByteView data, std::size_t length)
{
    Bytes out;
    out.reserve(length + 32);
    for (std::uint32_t i = 0; out.size() < length; ++i)
    {
        Sha256 h;
        h.update(ByteView{reinterpret_cast<const std::uint8_t*>(tag.data()), tag.size()});
        const std::uint8_t counter[4] = {static_cast<std::uint8_t>(i >> 24), static_cast<std::uint8_t>(i >> 16),
            static_cast<std::uint8_t>(i >> 8), static_cast<std::uint8_t>(i)};
        h.update(counter);
        h.update(data);
        const auto d = h.finish();
        out.insert(out.end(), d.begin(), d.end());
    }
    out.resize(length);
    return out;
}

}  // namespace idka
