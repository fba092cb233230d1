// SPDX-License-Identifier: Apache-2.0
#include "idka/protocol/session.hpp"

#include "idka/backend/arith.hpp"
#include "idka/backend/map.hpp"
#include "idka/errors.hpp"

namespace idka::protocol
{
namespace
{
bool is_identity(const Value& v)
{
    if (const auto* g = std::get_if<G1Point>(&v))
        return g->is_identity();
    if (const auto* t = std::get_if<GtElement>(&v))
        return t->value == gt_one().value;
    return false;
}
}  // namespace

Scalar message_coefficient(const PairingParams& pp, const Value& message, std::string_view id)
{
    Bytes in = encode(pp, message);
    append(in, to_bytes(id));
    return hash_to_zq(pp, in);
}

std::string_view to_string(Role r)
{
    return r == Role::initiator ? "initiator" : "responder";
}

std::string_view to_string(Phase p)
{
    switch (p)
    {
    case Phase::fresh:
        return "fresh";
    case Phase::sent:
        return "sent";
    case Phase::complete:
        return "complete";
    }
    return "?";
}

Session Session::start(const CatalogEntry& entry, const PairingParams& pp, const G1Point& master_public,
                       const Identity& own, const PeerInfo& peer, Role role, Rng& rng, SessionOptions options)
{
    if (options.inverted && !entry.inverted)
        throw ConfigError(entry.name + " has no variant for P0 = s^-1 P");

    Session s;
    s.entry_ = &entry;
    s.pp_ = pp;
    s.role_ = role;
    s.options_ = options;
    s.own_id_ = id_of(own);
    s.peer_id_ = peer.id;

    auto& env = s.env_;
    env["P"] = pp.generator;
    switch (entry.family)
    {
    case Family::dh: {
        const auto* k = std::get_if<DhIdentity>(&own);
        if (!k)
            throw ConfigError(entry.name + " needs DH keys");
        if (!peer.static_public)
            throw ConfigError(entry.name + ": missing static public key of " + peer.id);
        if (!in_subgroup(pp, *peer.static_public) || peer.static_public->is_identity())
            throw ValidationError("peer static key is not a valid group element");
        env["a"] = k->a;
        env["Q_A"] = k->Q;
        env["Q_B"] = *peer.static_public;
        env["F_AB"] = g1_mul(pp, k->a, *peer.static_public);
        break;
    }
    case Family::sok: {
        const auto* k = std::get_if<SokIdentity>(&own);
        if (!k)
            throw ConfigError(entry.name + " needs SOK keys");
        env["P_0"] = master_public;
        env["Q_A"] = k->Q;
        env["Q_B"] = hash_to_g1(pp, to_bytes(peer.id));
        env["S_A"] = k->S;
        break;
    }
    case Family::sk: {
        const auto* k = std::get_if<SkIdentity>(&own);
        if (!k)
            throw ConfigError(entry.name + " needs SK keys");
        env["P_0"] = master_public;
        env["Q_A"] = k->Qpub;
        env["Q_B"] = sk_public(pp, master_public, peer.id);
        env["S_A"] = k->S;
        env["u_A"] = k->u;
        env["u_B"] = hash_to_zq(pp, to_bytes(peer.id));
        break;
    }
    }

    s.x_ = make_scalar(pp, rng.between(1, pp.q));
    env["x"] = s.x_;

    if (entry.kind == Kind::non_interactive)
    {
        s.phase_ = Phase::complete;
        return s;
    }

    const bool sends = entry.kind == Kind::two_message || role == Role::initiator;
    if (sends)
    {
        const auto msg = formula::evaluate(pp, formula::parse_expr(options.inverted ? entry.inverted->message : entry.message), env);
        env["T_A"] = msg;
        s.sent_ = encode(pp, msg);
    }
    s.phase_ = entry.kind == Kind::transport && role == Role::initiator ? Phase::complete : Phase::sent;
    return s;
}

ValueKind Session::message_kind() const noexcept
{
    return entry_->target_messages() ? ValueKind::gt : ValueKind::g1;
}

void Session::absorb(ByteView peer_message)
{
    if (phase_ != Phase::sent)
        throw ConfigError("absorb called in phase " + std::string(to_string(phase_)));

    const auto peer = decode(pp_, peer_message, message_kind());
    if (is_identity(peer))
        throw ValidationError("peer message is the identity element");

    env_["T_B"] = peer;
    received_ = Bytes(peer_message.begin(), peer_message.end());

    if (entry_->uses_h())
    {
        if (options_.pin_h_to_one)
        {
            env_["h_A"] = Scalar{1};
            env_["h_B"] = Scalar{1};
        }
        else
        {
            if (const auto it = env_.find("T_A"); it != env_.end())
                env_["h_A"] = message_coefficient(pp_, it->second, peer_id_);
            env_["h_B"] = message_coefficient(pp_, peer, own_id_);
        }
    }
    phase_ = Phase::complete;
}

std::optional<Scalar> Session::h_A() const
{
    if (const auto it = env_.find("h_A"); it != env_.end())
        return std::get<Scalar>(it->second);
    return std::nullopt;
}

std::optional<Scalar> Session::h_B() const
{
    if (const auto it = env_.find("h_B"); it != env_.end())
        return std::get<Scalar>(it->second);
    return std::nullopt;
}

formula::SecretFormula Session::secret_formula() const
{
    if (options_.inverted)
    {
        formula::SecretFormula f;
        for (const auto& c : entry_->inverted->secret)
            f.components.push_back(formula::parse_expr(c, entry_->parse_options()));
        return f;
    }
    return entry_->secret_formula(entry_->kind == Kind::transport && role_ == Role::responder);
}

std::vector<Value> Session::derive_secret() const
{
    if (phase_ != Phase::complete)
        throw ConfigError("derive called in phase " + std::string(to_string(phase_)));
    return formula::evaluate(pp_, secret_formula(), env_);
}

Transcript Session::transcript() const
{
    const bool init = role_ == Role::initiator;
    Transcript t(entry_->name, params_ref(pp_), init ? own_id_ : peer_id_, init ? peer_id_ : own_id_);
    const auto kind = message_kind();
    const std::optional<Bytes>& first = init ? sent_ : received_;
    const std::optional<Bytes>& second = init ? received_ : sent_;
    if (first)
        t.append(t.initiator(), kind, *first);
    if (second)
        t.append(t.responder(), kind, *second);
    return t;
}

SessionKey Session::derive_key(ByteView context) const
{
    return derive_session_key(pp_, entry_->name, own_id_, peer_id_, transcript(), derive_secret(), context);
}

}  // namespace idka::protocol
