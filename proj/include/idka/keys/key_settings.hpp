// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "idka/backend/params.hpp"
#include "idka/backend/rng.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace idka
{

enum class Setting
{
    dh,       ///< certified static keys <a, aP>
    sok,      ///< Q = H(ID), S = sQ, P0 = sP
    sok_inv,  ///< as sok, but P0 = s^-1 P
    sk,       ///< u = H'(ID), S = (s + u)^-1 P, Q = P0 + uP
};

std::string_view to_string(Setting s);
Setting setting_from_string(std::string_view name);

struct DhIdentity
{
    std::string id;
    Scalar a;
    G1Point Q;
};

struct SokMaster
{
    Scalar s;
    G1Point P0;
    bool inverted = false;
};

struct SokIdentity
{
    std::string id;
    G1Point Q;
    G1Point S;
};

struct SkMaster
{
    Scalar s;
    G1Point P0;
};

struct SkIdentity
{
    std::string id;
    Scalar u;
    G1Point Qpub;
    G1Point S;
};

using Identity = std::variant<DhIdentity, SokIdentity, SkIdentity>;

DhIdentity dh_keygen(const PairingParams& pp, std::string id, Rng& rng);

SokMaster sok_setup(const PairingParams& pp, Rng& rng, bool inverted);
/// Extraction is S = sQ in both the plain and the inverted setting.
SokIdentity sok_extract(const PairingParams& pp, const SokMaster& m, std::string id);

SkMaster sk_setup(const PairingParams& pp, Rng& rng);
/// Throws ExtractionError when s + H'(id) = 0 (mod q).
SkIdentity sk_extract(const PairingParams& pp, const SkMaster& m, std::string id);

/// Public key of an SK identity, computable by anyone from the id and P0.
G1Point sk_public(const PairingParams& pp, const G1Point& P0, std::string_view id);

struct StaticSharedSecret
{
    Setting setting;
    Value value;
};

/// F_DH = a * Q_peer.
StaticSharedSecret static_secret(const PairingParams& pp, const DhIdentity& me, const G1Point& peer_Q);
/// F_SOK = e(S_me, Q_peer) = e(Q_A, Q_B)^s.
StaticSharedSecret static_secret(const PairingParams& pp, const SokIdentity& me, const G1Point& peer_Q);

const std::string& id_of(const Identity& ident);
/// The static public key the peer uses for this identity (Q for DH/SOK, Qpub for SK).
const G1Point& public_key_of(const Identity& ident);

/// A key-generation authority for one setting: the PKG for the ID-based
/// settings, a simulated certificate authority for DH.
class KeyDomain
{
public:
    static KeyDomain create(const PairingParams& pp, Setting setting, Rng& rng);
    static KeyDomain from_sok(SokMaster m);
    static KeyDomain from_sk(SkMaster m);

    [[nodiscard]] Setting setting() const noexcept { return setting_; }

    /// Master public key; identity for DH.
    [[nodiscard]] G1Point master_public() const;
    /// Master private key s; nullopt for DH.
    [[nodiscard]] std::optional<Scalar> master_secret() const;

    [[nodiscard]] const std::optional<SokMaster>& sok() const noexcept { return sok_; }
    [[nodiscard]] const std::optional<SkMaster>& sk() const noexcept { return sk_; }

    /// DH: fresh key pair from rng. SOK/SK: extraction (rng unused).
    Identity enroll(const PairingParams& pp, std::string id, Rng& rng) const;

private:
    Setting setting_ = Setting::dh;
    std::optional<SokMaster> sok_;
    std::optional<SkMaster> sk_;
};

// Key files: {setting, id, public: {...}, private: {...}} with hex-encoded
// points (encode()) and scalars (lowercase hex integers).

nlohmann::json identity_to_json(const PairingParams& pp, const Identity& ident, Setting setting, bool include_private);
/// Throws ConfigError on structural problems, DecodeError on bad encodings.
Identity identity_from_json(const PairingParams& pp, const nlohmann::json& j);

nlohmann::json master_to_json(const PairingParams& pp, const KeyDomain& domain, bool include_private);
KeyDomain master_from_json(const PairingParams& pp, const nlohmann::json& j);

}  // namespace idka
