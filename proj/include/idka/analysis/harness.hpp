// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "idka/protocol/session.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace idka::analysis
{

using protocol::CatalogEntry;
using protocol::SessionKey;
using protocol::Transcript;

/// Key authority plus the enrolled keys of the two parties of a run.
struct Parties
{
    KeyDomain domain;
    Identity a;
    Identity b;
};

/// `inverted` selects P0 = s^-1 P (SOK only).
Parties make_parties(const PairingParams& pp, protocol::Family family, const std::string& id_a,
                     const std::string& id_b, Rng& rng, bool inverted = false);

/// The peer's view of `ident`: id plus, in the DH setting, its certified key.
protocol::PeerInfo peer_info(const Identity& ident);

/// Single-byte change applied to one message in flight.
struct Tamper
{
    std::size_t message_index = 0;  ///< 0 = initiator's message, 1 = responder's
    std::size_t byte_index = 0;
    std::uint8_t xor_mask = 1;
};

struct Handshake
{
    protocol::Session initiator;
    protocol::Session responder;
    /// The initiator's view of the run.
    Transcript transcript;
    SessionKey key_a;
    SessionKey key_b;
    std::vector<Value> secret_a;
    std::vector<Value> secret_b;

    [[nodiscard]] bool agreed() const { return key_a == key_b; }
};

/// Drives both roles through start / absorb / derive. Rejections from absorb
/// propagate (DecodeError, ValidationError).
Handshake run_handshake(const CatalogEntry& entry, const PairingParams& pp, const Parties& parties, Rng& rng,
                        protocol::SessionOptions options = {}, std::optional<Tamper> tamper = std::nullopt);

/// Fresh parties and an honest run; throws AgreementError if the keys differ.
Handshake run_handshake(const CatalogEntry& entry, const PairingParams& pp, const std::string& id_a,
                        const std::string& id_b, Rng& rng);

/// The PKG's recomputation of the session key from s and the public transcript;
/// nullopt when the entry has no recovery formula.
std::optional<SessionKey> pkg_escrow_recover(const CatalogEntry& entry, const PairingParams& pp,
                                             const KeyDomain& master, const Transcript& transcript,
                                             protocol::SessionOptions options = {});

/// Session key recomputed from both static private keys and the transcript;
/// nullopt when no attack is defined.
std::optional<SessionKey> static_compromise_attack(const CatalogEntry& entry, const PairingParams& pp,
                                                   const Parties& parties, const Transcript& transcript);

/// An adversary holding the victim's static key impersonates the peer toward
/// the victim. True iff it derives the victim's key; nullopt when no attack is defined.
std::optional<bool> kci_attack(const CatalogEntry& entry, const PairingParams& pp, const Parties& parties, Rng& rng);

struct DegenerationResult
{
    std::string name;
    std::string reference;
    std::size_t runs = 0;
    bool passed = false;
};

/// With h_A = h_B = 1 the entry's secret must equal the reference: another
/// catalog entry run on the same randomness, or a formula evaluated on the same session.
DegenerationResult check_degeneration(const CatalogEntry& entry, const std::string& reference, const PairingParams& pp,
                                      std::size_t runs, Rng& rng);

/// HMQV -> Reduced-MQV, ID-MQV -> Shim, ECKE-1N and eMB -> their unhashed forms.
std::vector<DegenerationResult> degeneration_check(const PairingParams& pp, std::size_t runs, Rng& rng);

/// Tamper probe: `runs` honest runs each with one random single-byte change.
/// Returns the number detected (rejection or key mismatch).
std::size_t tamper_probe(const CatalogEntry& entry, const PairingParams& pp, std::size_t runs, Rng& rng);

enum class Outcome
{
    succeeded,
    failed,
    not_applicable,
};

struct RunReport
{
    std::string protocol;
    std::size_t runs = 0;
    bool agreement = false;
    Outcome escrow = Outcome::not_applicable;
    Outcome pfs_attack = Outcome::not_applicable;
    Outcome kci_attack = Outcome::not_applicable;
    Outcome inverted_variant = Outcome::not_applicable;
    Outcome tamper = Outcome::not_applicable;
    std::vector<DegenerationResult> degenerations;
    std::vector<std::string> notes;

    /// Every probe that applies came out as the flags predict.
    [[nodiscard]] bool ok(const CatalogEntry& entry) const;
};

struct MatrixOptions
{
    std::size_t runs = 10;
    std::size_t tamper_runs = 5;
    std::size_t degeneration_runs = 10;
};

RunReport analyze(const CatalogEntry& entry, const PairingParams& pp, Rng& rng, const MatrixOptions& options = {});
std::vector<RunReport> full_matrix(const PairingParams& pp, Rng& rng, const MatrixOptions& options = {});

nlohmann::json to_json(const RunReport& r, const CatalogEntry& entry);

}  // namespace idka::analysis
