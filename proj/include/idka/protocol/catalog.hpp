// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "idka/formula/rules.hpp"
#include "idka/keys/key_settings.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace idka::protocol
{

enum class Family
{
    dh,
    sok,
    sk,
};

enum class Kind
{
    non_interactive,
    transport,    ///< the initiator picks the key and sends one message
    two_message,
};

std::string_view to_string(Family f);
std::string_view to_string(Kind k);
Family family_from_string(std::string_view name);

/// Key setting a family runs under (SOK entries also run under sok_inv through their variant).
Setting setting_of(Family f);

struct Flags
{
    bool escrowed = false;
    bool pfs = true;
    bool kci_resilient = true;
    bool known_broken = false;
};

/// Key-compromise impersonation: an adversary holding the victim's static key
/// sends `message` (ephemeral y) while claiming to be the peer, then computes
/// `secret`. Both are written from the victim's point of view.
struct KciAttack
{
    std::string message;
    std::vector<std::string> secret;
};

/// Message and secret used when P0 = s^-1 P.
struct InvertedVariant
{
    std::string message;
    std::vector<std::string> secret;
};

/// One protocol. All formulas are written from the point of view of the party
/// evaluating them, who is always bound as A: own keys are the _A atoms, the
/// peer's are the _B atoms, x is the own ephemeral, T_A the sent message and
/// T_B the received one.
struct CatalogEntry
{
    std::string name;
    Family family = Family::dh;
    Kind kind = Kind::two_message;
    /// Empty for non-interactive entries; for transport only the initiator sends.
    std::string message;
    std::vector<std::string> secret;
    /// Transport receiver's secret; empty otherwise.
    std::vector<std::string> receiver_secret;
    Flags flags;
    /// Computed by the PKG from s and the transcript.
    std::optional<std::vector<std::string>> pkg_recover;
    /// Computed from both static private keys and the transcript.
    std::optional<std::vector<std::string>> static_attack;
    /// The victim is the initiator, or the receiver for transport entries.
    std::optional<KciAttack> kci_attack;
    /// Paired protocol across the DH / ID-based correspondence; empty if none.
    std::string counterpart;
    /// The ID-based formula follows from the DH one by the substitution rules.
    bool rule_derived = false;
    std::optional<InvertedVariant> inverted;
    std::string note;

    [[nodiscard]] bool target_messages() const noexcept;
    [[nodiscard]] formula::ParseOptions parse_options() const noexcept;
    /// Parsed secret for the given role (initiator = sender for transport).
    [[nodiscard]] formula::SecretFormula secret_formula(bool receiver = false) const;
    [[nodiscard]] formula::Expr message_formula() const;
    [[nodiscard]] bool uses_h() const;
};

const std::vector<CatalogEntry>& catalog();

/// Throws ConfigError for an unknown name.
const CatalogEntry& lookup(std::string_view name);
const CatalogEntry* find(std::string_view name) noexcept;

/// Entries not flagged known_broken.
std::vector<const CatalogEntry*> secure_catalog();

/// Rule set translating a DH entry into its ID-based counterpart's family.
std::optional<formula::RuleSet> rules_for(Family id_family);

}  // namespace idka::protocol
