// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "idka/formula/evaluate.hpp"
#include "idka/keys/key_settings.hpp"
#include "idka/protocol/catalog.hpp"
#include "idka/protocol/kdf.hpp"
#include "idka/protocol/transcript.hpp"

#include <optional>
#include <string>
#include <vector>

namespace idka::protocol
{

enum class Role
{
    initiator,
    responder,
};

enum class Phase
{
    fresh,
    sent,      ///< waiting for the peer's message
    complete,
};

std::string_view to_string(Role r);
std::string_view to_string(Phase p);

/// h = H(encode(message) || id): h_A uses the own message and the peer's id,
/// h_B the peer's message and the own id.
Scalar message_coefficient(const PairingParams& pp, const Value& message, std::string_view id);

/// What a party knows about its peer before the run.
struct PeerInfo
{
    std::string id;
    /// Certified static key; required in the DH setting, derived from the id otherwise.
    std::optional<G1Point> static_public;
};

struct SessionOptions
{
    /// Forces h_A = h_B = 1.
    bool pin_h_to_one = false;
    /// Runs the entry's variant for P0 = s^-1 P (message x*P0).
    bool inverted = false;
};

/// One party's side of one run.
class Session
{
public:
    /// `master_public` is P0 for the ID-based families and ignored for DH.
    /// Throws ConfigError when the key setting does not match the entry.
    static Session start(const CatalogEntry& entry, const PairingParams& pp, const G1Point& master_public,
                         const Identity& own, const PeerInfo& peer, Role role, Rng& rng, SessionOptions options = {});

    /// Decodes and validates the peer's message. Throws DecodeError or
    /// ValidationError on a bad element, ConfigError outside phase sent.
    void absorb(ByteView peer_message);

    /// Secret components in formula order; requires phase complete.
    [[nodiscard]] std::vector<Value> derive_secret() const;
    [[nodiscard]] SessionKey derive_key(ByteView context = {}) const;

    [[nodiscard]] const CatalogEntry& entry() const noexcept { return *entry_; }
    [[nodiscard]] Role role() const noexcept { return role_; }
    [[nodiscard]] Phase phase() const noexcept { return phase_; }
    [[nodiscard]] const std::string& own_id() const noexcept { return own_id_; }
    [[nodiscard]] const std::string& peer_id() const noexcept { return peer_id_; }
    [[nodiscard]] const Scalar& x() const noexcept { return x_; }
    /// Encoded outgoing message; nullopt when this role sends nothing.
    [[nodiscard]] const std::optional<Bytes>& message() const noexcept { return sent_; }
    [[nodiscard]] ValueKind message_kind() const noexcept;
    [[nodiscard]] std::optional<Scalar> h_A() const;
    [[nodiscard]] std::optional<Scalar> h_B() const;
    /// Atom bindings from this party's point of view (own = A).
    [[nodiscard]] const formula::Assignment& assignment() const noexcept { return env_; }
    /// The formula this role evaluates.
    [[nodiscard]] formula::SecretFormula secret_formula() const;
    /// Messages in run order (initiator first).
    [[nodiscard]] Transcript transcript() const;

private:
    Session() = default;

    const CatalogEntry* entry_ = nullptr;
    PairingParams pp_;
    Role role_ = Role::initiator;
    Phase phase_ = Phase::fresh;
    SessionOptions options_;
    std::string own_id_;
    std::string peer_id_;
    Scalar x_;
    std::optional<Bytes> sent_;
    std::optional<Bytes> received_;
    formula::Assignment env_;
};

}  // namespace idka::protocol
