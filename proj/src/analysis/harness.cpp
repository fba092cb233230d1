// SPDX-License-Identifier: Apache-2.0
#include "idka/analysis/harness.hpp"

#include "idka/backend/arith.hpp"
#include "idka/backend/map.hpp"
#include "idka/errors.hpp"

namespace idka::analysis
{
namespace
{
using protocol::Family;
using protocol::Kind;
using protocol::Role;
using protocol::Session;
using protocol::SessionOptions;

std::vector<Value> evaluate_all(const PairingParams& pp, const std::vector<std::string>& parts,
                                formula::ParseOptions opts, const formula::Assignment& env)
{
    std::vector<Value> out;
    for (const auto& p : parts)
        out.push_back(formula::evaluate(pp, formula::parse_expr(p, opts), env));
    return out;
}

std::string random_id(std::string_view prefix, Rng& rng)
{
    return std::string(prefix) + "-" + to_hex(rng.bytes(4));
}

/// Atoms anyone can compute from the ids, public keys and the transcript,
/// from the initiator's point of view.
formula::Assignment public_env(const CatalogEntry& entry, const PairingParams& pp, const G1Point& P0,
                               const G1Point& Q_A, const G1Point& Q_B, const Transcript& t, bool pin_h)
{
    formula::Assignment env;
    env["P"] = pp.generator;
    env["Q_A"] = Q_A;
    env["Q_B"] = Q_B;
    if (entry.family != Family::dh)
        env["P_0"] = P0;
    if (entry.family == Family::sk)
    {
        env["u_A"] = hash_to_zq(pp, to_bytes(t.initiator()));
        env["u_B"] = hash_to_zq(pp, to_bytes(t.responder()));
    }
    const auto kind = entry.target_messages() ? ValueKind::gt : ValueKind::g1;
    const auto& msgs = t.messages();
    if (!msgs.empty())
        env["T_A"] = decode(pp, msgs[0].bytes, kind);
    if (msgs.size() > 1)
        env["T_B"] = decode(pp, msgs[1].bytes, kind);
    if (entry.uses_h() && msgs.size() > 1)
    {
        if (pin_h)
        {
            env["h_A"] = Scalar{1};
            env["h_B"] = Scalar{1};
        }
        else
        {
            env["h_A"] = protocol::message_coefficient(pp, env["T_A"], t.responder());
            env["h_B"] = protocol::message_coefficient(pp, env["T_B"], t.initiator());
        }
    }
    return env;
}

SessionKey key_for(const CatalogEntry& entry, const PairingParams& pp, const Transcript& t,
                   const std::vector<Value>& secret)
{
    return protocol::derive_session_key(pp, entry.name, t.initiator(), t.responder(), t, secret);
}

std::string_view outcome_name(Outcome o, std::string_view yes, std::string_view no, std::string_view none)
{
    switch (o)
    {
    case Outcome::succeeded:
        return yes;
    case Outcome::failed:
        return no;
    case Outcome::not_applicable:
        return none;
    }
    return "?";
}

struct DegenerationCase
{
    const char* entry;
    const char* reference;
};

constexpr DegenerationCase degeneration_cases[] = {
    {"HMQV", "Reduced-MQV"},
    {"ID-MQV", "Shim"},
    {"ECKE-1N", "(x + 1)*inv(a)*(T_B + Q_A)"},
    {"eMB", "e(S_A, T_B + Q_A)^(x + 1)"},
};
}  // namespace

Parties make_parties(const PairingParams& pp, Family family, const std::string& id_a, const std::string& id_b,
                     Rng& rng, bool inverted)
{
    if (inverted && family != Family::sok)
        throw ConfigError("the inverted master key exists only in the SOK setting");
    const auto setting = inverted ? Setting::sok_inv : protocol::setting_of(family);
    for (int attempt = 0;; ++attempt)
    {
        auto domain = KeyDomain::create(pp, setting, rng);
        try
        {
            auto a = domain.enroll(pp, id_a, rng);
            auto b = domain.enroll(pp, id_b, rng);
            return {std::move(domain), std::move(a), std::move(b)};
        }
        catch (const ExtractionError&)
        {
            // s + H'(id) = 0 for one of the ids: pick another master key
            if (attempt == 16)
                throw;
        }
    }
}

protocol::PeerInfo peer_info(const Identity& ident)
{
    protocol::PeerInfo p{id_of(ident), std::nullopt};
    if (std::holds_alternative<DhIdentity>(ident))
        p.static_public = public_key_of(ident);
    return p;
}

Handshake run_handshake(const CatalogEntry& entry, const PairingParams& pp, const Parties& parties, Rng& rng,
                        SessionOptions options, std::optional<Tamper> tamper)
{
    const auto P0 = parties.domain.master_public();
    auto init = Session::start(entry, pp, P0, parties.a, peer_info(parties.b), Role::initiator, rng, options);
    auto resp = Session::start(entry, pp, P0, parties.b, peer_info(parties.a), Role::responder, rng, options);

    auto deliver = [&](const Session& from, Session& to, std::size_t index) {
        if (!from.message())
            return;
        Bytes m = *from.message();
        if (tamper && tamper->message_index == index)
            m.at(tamper->byte_index % m.size()) ^= tamper->xor_mask;
        to.absorb(m);
    };
    deliver(init, resp, 0);
    deliver(resp, init, 1);

    auto transcript = init.transcript();
    auto key_a = init.derive_key();
    auto key_b = resp.derive_key();
    auto secret_a = init.derive_secret();
    auto secret_b = resp.derive_secret();
    return {std::move(init), std::move(resp), std::move(transcript), key_a, key_b, std::move(secret_a),
            std::move(secret_b)};
}

Handshake run_handshake(const CatalogEntry& entry, const PairingParams& pp, const std::string& id_a,
                        const std::string& id_b, Rng& rng)
{
    const auto parties = make_parties(pp, entry.family, id_a, id_b, rng);
    auto h = run_handshake(entry, pp, parties, rng);
    if (!h.agreed())
        throw AgreementError(entry.name + ": session keys differ");
    return h;
}

std::optional<SessionKey> pkg_escrow_recover(const CatalogEntry& entry, const PairingParams& pp,
                                             const KeyDomain& master, const Transcript& transcript,
                                             SessionOptions options)
{
    if (!entry.pkg_recover || options.inverted || entry.family == Family::dh)
        return std::nullopt;
    const auto s = master.master_secret();
    if (!s)
        return std::nullopt;

    const auto P0 = master.master_public();
    G1Point Q_A;
    G1Point Q_B;
    if (entry.family == Family::sok)
    {
        Q_A = hash_to_g1(pp, to_bytes(transcript.initiator()));
        Q_B = hash_to_g1(pp, to_bytes(transcript.responder()));
    }
    else
    {
        Q_A = sk_public(pp, P0, transcript.initiator());
        Q_B = sk_public(pp, P0, transcript.responder());
    }
    auto env = public_env(entry, pp, P0, Q_A, Q_B, transcript, options.pin_h_to_one);
    env["s"] = *s;
    return key_for(entry, pp, transcript, evaluate_all(pp, *entry.pkg_recover, entry.parse_options(), env));
}

std::optional<SessionKey> static_compromise_attack(const CatalogEntry& entry, const PairingParams& pp,
                                                   const Parties& parties, const Transcript& transcript)
{
    if (!entry.static_attack)
        return std::nullopt;
    auto env = public_env(entry, pp, parties.domain.master_public(), public_key_of(parties.a),
                          public_key_of(parties.b), transcript, false);
    if (const auto* a = std::get_if<DhIdentity>(&parties.a))
    {
        env["a"] = a->a;
        env["b"] = std::get<DhIdentity>(parties.b).a;
    }
    else if (const auto* a = std::get_if<SokIdentity>(&parties.a))
    {
        env["S_A"] = a->S;
        env["S_B"] = std::get<SokIdentity>(parties.b).S;
    }
    else
    {
        env["S_A"] = std::get<SkIdentity>(parties.a).S;
        env["S_B"] = std::get<SkIdentity>(parties.b).S;
    }
    return key_for(entry, pp, transcript, evaluate_all(pp, *entry.static_attack, entry.parse_options(), env));
}

std::optional<bool> kci_attack(const CatalogEntry& entry, const PairingParams& pp, const Parties& parties, Rng& rng)
{
    if (!entry.kci_attack)
        return std::nullopt;
    const auto P0 = parties.domain.master_public();
    const auto role = entry.kind == Kind::transport ? Role::responder : Role::initiator;
    auto victim = Session::start(entry, pp, P0, parties.a, peer_info(parties.b), role, rng);

    // the adversary knows the victim's static key, public values and its own y
    formula::Assignment env;
    for (const char* name : {"P", "P_0", "Q_A", "Q_B", "F_AB", "u_A", "u_B", "a", "S_A"})
        if (const auto it = victim.assignment().find(name); it != victim.assignment().end())
            env[name] = it->second;
    env["y"] = make_scalar(pp, rng.between(1, pp.q));
    if (victim.message())
        env["T_A"] = decode(pp, *victim.message(), victim.message_kind());

    if (!entry.kci_attack->message.empty())
    {
        const auto sent = formula::evaluate(pp, formula::parse_expr(entry.kci_attack->message), env);
        victim.absorb(encode(pp, sent));
        env["T_B"] = sent;
        if (entry.uses_h())
        {
            if (const auto it = env.find("T_A"); it != env.end())
                env["h_A"] = protocol::message_coefficient(pp, it->second, victim.peer_id());
            env["h_B"] = protocol::message_coefficient(pp, sent, victim.own_id());
        }
    }

    const auto secret = evaluate_all(pp, entry.kci_attack->secret, entry.parse_options(), env);
    const auto t = victim.transcript();
    return key_for(entry, pp, t, secret) == victim.derive_key();
}

DegenerationResult check_degeneration(const CatalogEntry& entry, const std::string& reference, const PairingParams& pp,
                                      std::size_t runs, Rng& rng)
{
    DegenerationResult r{entry.name, reference, runs, true};
    const auto* other = protocol::find(reference);
    std::optional<formula::SecretFormula> ref_formula;
    if (!other)
        ref_formula = formula::parse(reference, entry.parse_options());

    for (std::size_t i = 0; i < runs; ++i)
    {
        const auto parties = make_parties(pp, entry.family, random_id("alice", rng), random_id("bob", rng), rng);
        const auto seed = rng.bytes(32);
        Rng r1(seed);
        const auto h = run_handshake(entry, pp, parties, r1, {.pin_h_to_one = true});
        if (other)
        {
            Rng r2(seed);
            const auto g = run_handshake(*other, pp, parties, r2);
            r.passed = r.passed && h.secret_a == g.secret_a && h.secret_b == g.secret_b;
        }
        else
        {
            const auto a = formula::evaluate(pp, *ref_formula, h.initiator.assignment());
            const auto b = formula::evaluate(pp, *ref_formula, h.responder.assignment());
            r.passed = r.passed && h.secret_a == a && h.secret_b == b;
        }
    }
    return r;
}

std::vector<DegenerationResult> degeneration_check(const PairingParams& pp, std::size_t runs, Rng& rng)
{
    std::vector<DegenerationResult> out;
    for (const auto& c : degeneration_cases)
        out.push_back(check_degeneration(protocol::lookup(c.entry), c.reference, pp, runs, rng));
    return out;
}

std::size_t tamper_probe(const CatalogEntry& entry, const PairingParams& pp, std::size_t runs, Rng& rng)
{
    const std::size_t messages = entry.kind == Kind::two_message ? 2 : entry.kind == Kind::transport ? 1 : 0;
    if (messages == 0)
        return 0;
    std::size_t detected = 0;
    for (std::size_t i = 0; i < runs; ++i)
    {
        const auto parties = make_parties(pp, entry.family, random_id("alice", rng), random_id("bob", rng), rng);
        Tamper t;
        t.message_index = rng.below(messages).get_ui();
        t.byte_index = rng.below(1u << 16).get_ui();
        t.xor_mask = static_cast<std::uint8_t>(rng.between(1, 256).get_ui());
        try
        {
            if (!run_handshake(entry, pp, parties, rng, {}, t).agreed())
                ++detected;
        }
        catch (const DecodeError&)
        {
            ++detected;
        }
        catch (const ValidationError&)
        {
            ++detected;
        }
    }
    return detected;
}

bool RunReport::ok(const CatalogEntry& entry) const
{
    auto matches = [](Outcome o, bool expected) {
        return expected ? o == Outcome::succeeded : o == Outcome::not_applicable;
    };
    if (!agreement || !matches(escrow, entry.flags.escrowed) || !matches(pfs_attack, !entry.flags.pfs) ||
        !matches(kci_attack, !entry.flags.kci_resilient))
        return false;
    if (inverted_variant == Outcome::failed || tamper == Outcome::failed)
        return false;
    for (const auto& d : degenerations)
        if (!d.passed)
            return false;
    return true;
}

RunReport analyze(const CatalogEntry& entry, const PairingParams& pp, Rng& rng, const MatrixOptions& options)
{
    RunReport r;
    r.protocol = entry.name;
    r.runs = options.runs;
    r.agreement = true;

    bool escrow_ok = true;
    bool pfs_ok = true;
    bool kci_ok = true;
    for (std::size_t i = 0; i < options.runs; ++i)
    {
        const auto parties = make_parties(pp, entry.family, random_id("alice", rng), random_id("bob", rng), rng);
        const auto h = run_handshake(entry, pp, parties, rng);
        r.agreement = r.agreement && h.agreed() && h.secret_a == h.secret_b;

        if (const auto k = pkg_escrow_recover(entry, pp, parties.domain, h.transcript))
            escrow_ok = escrow_ok && *k == h.key_a;
        if (const auto k = static_compromise_attack(entry, pp, parties, h.transcript))
            pfs_ok = pfs_ok && *k == h.key_a;
        if (const auto k = kci_attack(entry, pp, parties, rng))
            kci_ok = kci_ok && *k;
    }
    auto outcome = [&](bool defined, bool ok) {
        return !defined ? Outcome::not_applicable : ok ? Outcome::succeeded : Outcome::failed;
    };
    r.escrow = outcome(entry.pkg_recover && entry.family != Family::dh, escrow_ok);
    r.pfs_attack = outcome(entry.static_attack.has_value(), pfs_ok);
    r.kci_attack = outcome(entry.kci_attack.has_value(), kci_ok);

    if (entry.inverted)
    {
        bool ok = true;
        for (std::size_t i = 0; i < options.runs; ++i)
        {
            const auto parties =
                make_parties(pp, entry.family, random_id("alice", rng), random_id("bob", rng), rng, true);
            ok = ok && run_handshake(entry, pp, parties, rng, {.inverted = true}).agreed();
        }
        r.inverted_variant = ok ? Outcome::succeeded : Outcome::failed;
    }

    if (entry.kind != Kind::non_interactive && options.tamper_runs > 0)
    {
        const auto detected = tamper_probe(entry, pp, options.tamper_runs, rng);
        r.tamper = detected == options.tamper_runs ? Outcome::succeeded : Outcome::failed;
    }

    for (const auto& c : degeneration_cases)
        if (entry.name == c.entry)
            r.degenerations.push_back(check_degeneration(entry, c.reference, pp, options.degeneration_runs, rng));

    if (entry.flags.known_broken)
        r.notes.push_back("known broken; excluded from the secure catalog");
    if (!entry.note.empty())
        r.notes.push_back(entry.note);
    return r;
}

std::vector<RunReport> full_matrix(const PairingParams& pp, Rng& rng, const MatrixOptions& options)
{
    std::vector<RunReport> out;
    for (const auto& e : protocol::catalog())
        out.push_back(analyze(e, pp, rng, options));
    return out;
}

nlohmann::json to_json(const RunReport& r, const CatalogEntry& entry)
{
    nlohmann::json degenerations = nlohmann::json::array();
    for (const auto& d : r.degenerations)
        degenerations.push_back({{"name", d.name}, {"reference", d.reference}, {"runs", d.runs}, {"passed", d.passed}});
    return {
        {"protocol", r.protocol},
        {"family", protocol::to_string(entry.family)},
        {"kind", protocol::to_string(entry.kind)},
        {"flags",
         {{"escrowed", entry.flags.escrowed},
          {"pfs", entry.flags.pfs},
          {"kci_resilient", entry.flags.kci_resilient},
          {"known_broken", entry.flags.known_broken}}},
        {"counterpart", entry.counterpart},
        {"runs", r.runs},
        {"agreement", r.agreement},
        {"escrow_check", outcome_name(r.escrow, "recovered", "failed", "not_applicable")},
        {"pfs_attack", outcome_name(r.pfs_attack, "succeeded", "failed", "no_attack_defined")},
        {"kci_attack", outcome_name(r.kci_attack, "succeeded", "failed", "no_attack_defined")},
        {"inverted_variant", outcome_name(r.inverted_variant, "agreed", "failed", "not_applicable")},
        {"tamper", outcome_name(r.tamper, "detected", "missed", "not_applicable")},
        {"degenerations", degenerations},
        {"notes", r.notes},
        {"ok", r.ok(entry)},
    };
}

}  // namespace idka::analysis
