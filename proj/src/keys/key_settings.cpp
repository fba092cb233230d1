// SPDX-License-Identifier: Apache-2.0
#include "idka/keys/key_settings.hpp"

#include "idka/backend/arith.hpp"
#include "idka/backend/encoding.hpp"
#include "idka/backend/map.hpp"
#include "idka/errors.hpp"

namespace idka
{

namespace
{
Scalar random_nonzero(const PairingParams& pp, Rng& rng)
{
    return {rng.between(1, pp.q)};
}

std::string hex_point(const PairingParams& pp, const G1Point& a)
{
    return to_hex(encode(pp, a));
}

std::string hex_scalar(const Scalar& k)
{
    return int_to_hex(k.value);
}

G1Point point_field(const PairingParams& pp, const nlohmann::json& obj, const char* name)
{
    return decode_g1(pp, from_hex(obj.at(name).get<std::string>()));
}

Scalar scalar_field(const PairingParams& pp, const nlohmann::json& obj, const char* name)
{
    auto v = int_from_hex(obj.at(name).get<std::string>());
    if (v >= pp.q)
        throw DecodeError(DecodeError::Kind::range, std::string{"key field '"} + name + "' is not reduced mod q");
    return {std::move(v)};
}

template <typename F>
auto guarded(F&& f) -> decltype(f())
{
    try
    {
        return f();
    }
    catch (const nlohmann::json::exception& e)
    {
        throw ConfigError(std::string{"malformed key file: "} + e.what());
    }
    catch (const std::invalid_argument& e)
    {
        throw ConfigError(std::string{"malformed key file: "} + e.what());
    }
}
}  // namespace

std::string_view to_string(Setting s)
{
    switch (s)
    {
    case Setting::dh:
        return "dh";
    case Setting::sok:
        return "sok";
    case Setting::sok_inv:
        return "sok_inv";
    case Setting::sk:
        return "sk";
    }
    return "?";
}

Setting setting_from_string(std::string_view name)
{
    if (name == "dh")
        return Setting::dh;
    if (name == "sok")
        return Setting::sok;
    if (name == "sok_inv")
        return Setting::sok_inv;
    if (name == "sk")
        return Setting::sk;
    throw ConfigError("unknown key setting '" + std::string{name} + "'");
}

DhIdentity dh_keygen(const PairingParams& pp, std::string id, Rng& rng)
{
    auto a = random_nonzero(pp, rng);
    auto Q = g1_mul(pp, a, pp.generator);
    return {std::move(id), std::move(a), std::move(Q)};
}

SokMaster sok_setup(const PairingParams& pp, Rng& rng, bool inverted)
{
    auto s = random_nonzero(pp, rng);
    auto P0 = g1_mul(pp, inverted ? scalar_inv(pp, s) : s, pp.generator);
    return {std::move(s), std::move(P0), inverted};
}

SokIdentity sok_extract(const PairingParams& pp, const SokMaster& m, std::string id)
{
    auto Q = hash_to_g1(pp, to_bytes(id));
    auto S = g1_mul(pp, m.s, Q);
    return {std::move(id), std::move(Q), std::move(S)};
}

SkMaster sk_setup(const PairingParams& pp, Rng& rng)
{
    auto s = random_nonzero(pp, rng);
    auto P0 = g1_mul(pp, s, pp.generator);
    return {std::move(s), std::move(P0)};
}

G1Point sk_public(const PairingParams& pp, const G1Point& P0, std::string_view id)
{
    const auto u = hash_to_zq(pp, to_bytes(id));
    return g1_add(pp, P0, g1_mul(pp, u, pp.generator));
}

SkIdentity sk_extract(const PairingParams& pp, const SkMaster& m, std::string id)
{
    auto u = hash_to_zq(pp, to_bytes(id));
    const auto su = scalar_add(pp, m.s, u);
    if (su.value == 0)
        throw ExtractionError("s + H'(" + id + ") = 0 mod q; regenerate the master key");
    auto S = g1_mul(pp, scalar_inv(pp, su), pp.generator);
    auto Qpub = g1_add(pp, m.P0, g1_mul(pp, u, pp.generator));
    return {std::move(id), std::move(u), std::move(Qpub), std::move(S)};
}

StaticSharedSecret static_secret(const PairingParams& pp, const DhIdentity& me, const G1Point& peer_Q)
{
    return {Setting::dh, g1_mul(pp, me.a, peer_Q)};
}

StaticSharedSecret static_secret(const PairingParams& pp, const SokIdentity& me, const G1Point& peer_Q)
{
    return {Setting::sok, pairing(pp, me.S, peer_Q)};
}

const std::string& id_of(const Identity& ident)
{
    return std::visit([](const auto& k) -> const std::string& { return k.id; }, ident);
}

const G1Point& public_key_of(const Identity& ident)
{
    struct Visitor
    {
        const G1Point& operator()(const DhIdentity& k) const { return k.Q; }
        const G1Point& operator()(const SokIdentity& k) const { return k.Q; }
        const G1Point& operator()(const SkIdentity& k) const { return k.Qpub; }
    };
    return std::visit(Visitor{}, ident);
}

KeyDomain KeyDomain::create(const PairingParams& pp, Setting setting, Rng& rng)
{
    KeyDomain d;
    d.setting_ = setting;
    switch (setting)
    {
    case Setting::dh:
        break;
    case Setting::sok:
    case Setting::sok_inv:
        d.sok_ = sok_setup(pp, rng, setting == Setting::sok_inv);
        break;
    case Setting::sk:
        d.sk_ = sk_setup(pp, rng);
        break;
    }
    return d;
}

KeyDomain KeyDomain::from_sok(SokMaster m)
{
    KeyDomain d;
    d.setting_ = m.inverted ? Setting::sok_inv : Setting::sok;
    d.sok_ = std::move(m);
    return d;
}

KeyDomain KeyDomain::from_sk(SkMaster m)
{
    KeyDomain d;
    d.setting_ = Setting::sk;
    d.sk_ = std::move(m);
    return d;
}

G1Point KeyDomain::master_public() const
{
    if (sok_)
        return sok_->P0;
    if (sk_)
        return sk_->P0;
    return G1Point::identity();
}

std::optional<Scalar> KeyDomain::master_secret() const
{
    if (sok_)
        return sok_->s;
    if (sk_)
        return sk_->s;
    return std::nullopt;
}

Identity KeyDomain::enroll(const PairingParams& pp, std::string id, Rng& rng) const
{
    if (sok_)
        return sok_extract(pp, *sok_, std::move(id));
    if (sk_)
        return sk_extract(pp, *sk_, std::move(id));
    return dh_keygen(pp, std::move(id), rng);
}

nlohmann::json identity_to_json(const PairingParams& pp, const Identity& ident, Setting setting, bool include_private)
{
    nlohmann::json j{{"setting", to_string(setting)}, {"id", id_of(ident)}};
    nlohmann::json pub;
    nlohmann::json priv;
    if (const auto* k = std::get_if<DhIdentity>(&ident))
    {
        pub["Q"] = hex_point(pp, k->Q);
        priv["a"] = hex_scalar(k->a);
    }
    else if (const auto* k = std::get_if<SokIdentity>(&ident))
    {
        pub["Q"] = hex_point(pp, k->Q);
        priv["S"] = hex_point(pp, k->S);
    }
    else if (const auto* k = std::get_if<SkIdentity>(&ident))
    {
        pub["u"] = hex_scalar(k->u);
        pub["Q"] = hex_point(pp, k->Qpub);
        priv["S"] = hex_point(pp, k->S);
    }
    j["public"] = std::move(pub);
    if (include_private)
        j["private"] = std::move(priv);
    return j;
}

Identity identity_from_json(const PairingParams& pp, const nlohmann::json& j)
{
    return guarded([&]() -> Identity {
        const auto setting = setting_from_string(j.at("setting").get<std::string>());
        auto id = j.at("id").get<std::string>();
        const auto& pub = j.at("public");
        if (!j.contains("private"))
            throw ConfigError("key file for '" + id + "' carries no private key");
        const auto& priv = j.at("private");
        switch (setting)
        {
        case Setting::dh: {
            DhIdentity k{std::move(id), scalar_field(pp, priv, "a"), point_field(pp, pub, "Q")};
            if (k.a.value == 0 || g1_mul(pp, k.a, pp.generator) != k.Q)
                throw ConfigError("DH key file: Q != aP");
            return k;
        }
        case Setting::sok:
        case Setting::sok_inv: {
            SokIdentity k{std::move(id), point_field(pp, pub, "Q"), point_field(pp, priv, "S")};
            if (k.Q != hash_to_g1(pp, to_bytes(k.id)))
                throw ConfigError("SOK key file: Q != H(id)");
            return k;
        }
        case Setting::sk: {
            SkIdentity k{std::move(id), scalar_field(pp, pub, "u"), point_field(pp, pub, "Q"), point_field(pp, priv, "S")};
            if (k.u != hash_to_zq(pp, to_bytes(k.id)))
                throw ConfigError("SK key file: u != H'(id)");
            return k;
        }
        }
        throw ConfigError("unreachable key setting");
    });
}

nlohmann::json master_to_json(const PairingParams& pp, const KeyDomain& domain, bool include_private)
{
    nlohmann::json j{{"setting", to_string(domain.setting())}, {"id", "PKG"}};
    nlohmann::json pub = nlohmann::json::object();
    nlohmann::json priv = nlohmann::json::object();
    if (domain.setting() != Setting::dh)
    {
        pub["P0"] = hex_point(pp, domain.master_public());
        priv["s"] = hex_scalar(*domain.master_secret());
    }
    j["public"] = std::move(pub);
    if (include_private)
        j["private"] = std::move(priv);
    return j;
}

KeyDomain master_from_json(const PairingParams& pp, const nlohmann::json& j)
{
    return guarded([&]() -> KeyDomain {
        const auto setting = setting_from_string(j.at("setting").get<std::string>());
        if (setting == Setting::dh)
        {
            Rng unused{Bytes{}};
            return KeyDomain::create(pp, Setting::dh, unused);
        }
        if (!j.contains("private"))
            throw ConfigError("master key file carries no private key");
        auto s = scalar_field(pp, j.at("private"), "s");
        auto P0 = point_field(pp, j.at("public"), "P0");
        if (s.value == 0)
            throw ConfigError("master key file: s = 0");
        const bool inverted = setting == Setting::sok_inv;
        if (g1_mul(pp, inverted ? scalar_inv(pp, s) : s, pp.generator) != P0)
            throw ConfigError("master key file: P0 does not match s");
        if (setting == Setting::sk)
            return KeyDomain::from_sk({std::move(s), std::move(P0)});
        return KeyDomain::from_sok({std::move(s), std::move(P0), inverted});
    });
}

}  // namespace idka
