// SPDX-License-Identifier: Apache-2.0
#include "fixtures.hpp"
#include "oracle.hpp"

#include "idka/analysis/harness.hpp"
#include "idka/backend/arith.hpp"
#include "idka/backend/map.hpp"
#include "idka/errors.hpp"
#include "idka/formula/normalize.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace idka;
using namespace idka::protocol;

namespace
{
const G1Point& point(const Value& v)
{
    return std::get<G1Point>(v);
}

const GtElement& target(const Value& v)
{
    return std::get<GtElement>(v);
}

mpz_class from_oracle(std::optional<oracle::i64> v)
{
    if (!v)
        throw std::runtime_error("oracle found no logarithm");
    return mpz_class(static_cast<long>(*v));
}

struct Fresh
{
    analysis::Parties parties;
    G1Point P0;

    Fresh(Family f, Rng& rng, bool inverted = false)
      : parties(analysis::make_parties(fixtures::tiny(), f, "alice", "bob", rng, inverted)),
        P0(parties.domain.master_public())
    {}
};
}  // namespace

TEST(Catalog, EntriesAndLinks)
{
    const auto& c = catalog();
    EXPECT_GE(c.size(), 28u);
    std::set<std::string> names;
    for (const auto& e : c)
    {
        EXPECT_TRUE(names.insert(e.name).second) << "duplicate " << e.name;
        EXPECT_FALSE(e.secret.empty()) << e.name;
        EXPECT_EQ(e.message.empty(), e.kind == Kind::non_interactive) << e.name;
        EXPECT_EQ(e.receiver_secret.empty(), e.kind != Kind::transport) << e.name;
        if (!e.counterpart.empty())
        {
            const auto& other = lookup(e.counterpart);
            EXPECT_EQ(other.counterpart, e.name) << e.name << " link is not mutual";
            EXPECT_NE((other.family == Family::dh), (e.family == Family::dh)) << e.name;
            EXPECT_EQ(other.rule_derived, e.rule_derived) << e.name;
        }
    }
    EXPECT_EQ(lookup("ID-MQV").counterpart, "HMQV");
    EXPECT_TRUE(lookup("Shim").flags.known_broken);
    EXPECT_TRUE(lookup("Scott").counterpart == "MTI/C1");
    EXPECT_TRUE(lookup("Enhanced-MTI/C1").counterpart.empty());
    EXPECT_EQ(&lookup("id-mqv"), &lookup("ID-MQV"));
    EXPECT_THROW(lookup("no such protocol"), ConfigError);
}

TEST(Catalog, FlagsFollowTheDefinedProbes)
{
    for (const auto& e : catalog())
    {
        EXPECT_EQ(e.flags.escrowed, e.pkg_recover.has_value()) << e.name;
        EXPECT_EQ(e.flags.pfs, !e.static_attack.has_value()) << e.name;
        EXPECT_EQ(e.flags.kci_resilient, !e.kci_attack.has_value()) << e.name;
        if (e.family == Family::dh)
            EXPECT_FALSE(e.flags.escrowed) << e.name;
    }
    for (const auto* name : {"SYL", "Escrowless-ID-MQV", "RYY", "eMB", "MB-1", "Scott"})
        EXPECT_FALSE(lookup(name).flags.escrowed) << name;
    for (const auto* name : {"Shim", "ID-MQV", "Smart", "Chen-Kudla", "Wang/Chow-Choo", "SOK-NIKD", "Escrowable-RYY"})
        EXPECT_TRUE(lookup(name).flags.escrowed) << name;
    for (const auto* name : {"UM", "RYY"})
        EXPECT_FALSE(lookup(name).flags.kci_resilient) << name;
    for (const auto* name : {"MTI/A0", "Smart"})
        EXPECT_FALSE(lookup(name).flags.pfs) << name;
}

TEST(Catalog, SecureListingDropsBrokenEntries)
{
    const auto secure = secure_catalog();
    for (const auto* e : secure)
        EXPECT_FALSE(e->flags.known_broken);
    std::size_t broken = 0;
    for (const auto& e : catalog())
        broken += e.flags.known_broken;
    EXPECT_EQ(secure.size() + broken, catalog().size());
    EXPECT_EQ(broken, 4u);
}

TEST(Catalog, RuleDerivedPairsTranslate)
{
    for (const auto& e : catalog())
    {
        if (e.family != Family::dh || !e.rule_derived)
            continue;
        const auto& id = lookup(e.counterpart);
        for (bool receiver : {false, true})
        {
            if (receiver && e.kind != Kind::transport)
                continue;
            const auto image = formula::apply_rules(e.secret_formula(receiver), *rules_for(id.family));
            EXPECT_TRUE(formula::structural_equiv(image, id.secret_formula(receiver)))
                << e.name << " -> " << formula::render(image);
        }
    }
}

TEST(Session, MessageForms)
{
    const auto& pp = fixtures::tiny();
    auto rng = fixtures::seeded("message forms");
    Fresh dh(Family::dh, rng);
    const auto& a = std::get<DhIdentity>(dh.parties.a);

    auto s = Session::start(lookup("MTI/A0"), pp, dh.P0, dh.parties.a, analysis::peer_info(dh.parties.b),
                            Role::initiator, rng);
    EXPECT_EQ(s.phase(), Phase::sent);
    EXPECT_EQ(decode_g1(pp, *s.message()), g1_mul(pp, s.x(), pp.generator));

    auto a1 = Session::start(lookup("MTI/A1"), pp, dh.P0, dh.parties.a, analysis::peer_info(dh.parties.b),
                             Role::initiator, rng);
    EXPECT_EQ(decode_g1(pp, *a1.message()), g1_mul(pp, a1.x(), a.Q));

    Fresh sok(Family::sok, rng);
    auto ck = Session::start(lookup("Chen-Kudla"), pp, sok.P0, sok.parties.a, analysis::peer_info(sok.parties.b),
                             Role::initiator, rng);
    EXPECT_EQ(decode_g1(pp, *ck.message()), g1_mul(pp, ck.x(), hash_to_g1(pp, to_bytes("alice"))));

    auto nikd = Session::start(lookup("SOK-NIKD"), pp, sok.P0, sok.parties.a, analysis::peer_info(sok.parties.b),
                               Role::initiator, rng);
    EXPECT_EQ(nikd.phase(), Phase::complete);
    EXPECT_FALSE(nikd.message().has_value());

    auto scott = Session::start(lookup("Scott"), pp, sok.P0, sok.parties.a, analysis::peer_info(sok.parties.b),
                                Role::initiator, rng);
    EXPECT_EQ(scott.message_kind(), ValueKind::gt);
    const auto F = pairing(pp, std::get<SokIdentity>(sok.parties.a).S, hash_to_g1(pp, to_bytes("bob")));
    EXPECT_EQ(decode_gt(pp, *scott.message()), gt_exp(pp, F, scott.x()));
}

TEST(Session, TransportRoles)
{
    const auto& pp = fixtures::tiny();
    auto rng = fixtures::seeded("transport");
    Fresh dh(Family::dh, rng);
    const auto& hughes = lookup("Hughes");
    auto sender = Session::start(hughes, pp, dh.P0, dh.parties.a, analysis::peer_info(dh.parties.b),
                                 Role::initiator, rng);
    auto receiver = Session::start(hughes, pp, dh.P0, dh.parties.b, analysis::peer_info(dh.parties.a),
                                   Role::responder, rng);
    EXPECT_EQ(sender.phase(), Phase::complete);
    EXPECT_EQ(receiver.phase(), Phase::sent);
    EXPECT_FALSE(receiver.message().has_value());
    receiver.absorb(*sender.message());
    EXPECT_EQ(sender.derive_secret(), receiver.derive_secret());
    EXPECT_EQ(point(sender.derive_secret()[0]), g1_mul(pp, sender.x(), pp.generator));
    EXPECT_EQ(sender.derive_key(), receiver.derive_key());
}

TEST(Session, AbsorbValidation)
{
    const auto& pp = fixtures::tiny();
    auto rng = fixtures::seeded("absorb");
    Fresh sok(Family::sok, rng);
    const auto& entry = lookup("ID-MQV");
    auto start = [&] {
        return Session::start(entry, pp, sok.P0, sok.parties.a, analysis::peer_info(sok.parties.b), Role::initiator,
                              rng);
    };

    auto s = start();
    EXPECT_THROW(s.derive_secret(), ConfigError);
    EXPECT_THROW(s.absorb(encode(pp, G1Point::identity())), ValidationError);
    EXPECT_EQ(s.phase(), Phase::sent);

    auto valid = encode(pp, g1_mul_int(pp, 77, pp.generator));
    auto flipped = valid;
    flipped[3] ^= 0x10;
    EXPECT_THROW(s.absorb(flipped), DecodeError);
    EXPECT_THROW(s.absorb(Bytes{0x04, 0x01}), DecodeError);

    s.absorb(valid);
    EXPECT_EQ(s.phase(), Phase::complete);
    EXPECT_THROW(s.absorb(valid), ConfigError);
    EXPECT_TRUE(s.h_A().has_value());
    EXPECT_TRUE(s.h_B().has_value());
}

TEST(Session, SettingMismatchIsRejected)
{
    const auto& pp = fixtures::tiny();
    auto rng = fixtures::seeded("mismatch");
    Fresh dh(Family::dh, rng);
    EXPECT_THROW(Session::start(lookup("Smart"), pp, dh.P0, dh.parties.a, analysis::peer_info(dh.parties.b),
                                Role::initiator, rng),
                 ConfigError);
    EXPECT_THROW(Session::start(lookup("MTI/A0"), pp, dh.P0, dh.parties.a, PeerInfo{"bob", std::nullopt},
                                Role::initiator, rng),
                 ConfigError);
    EXPECT_THROW(Session::start(lookup("MTI/A0"), pp, dh.P0, dh.parties.a, analysis::peer_info(dh.parties.b),
                                Role::initiator, rng, {.inverted = true}),
                 ConfigError);
}

TEST(Session, IdMqvSecretMatchesClosedForm)
{
    const auto& pp = fixtures::tiny();
    auto rng = fixtures::seeded("id-mqv closed form");
    for (int i = 0; i < 10; ++i)
    {
        Fresh sok(Family::sok, rng);
        const auto h = analysis::run_handshake(lookup("ID-MQV"), pp, sok.parties, rng);
        const auto& init = h.initiator;
        const auto s = *sok.parties.domain.master_secret();
        const auto Q_A = hash_to_g1(pp, to_bytes("alice"));
        const auto Q_B = hash_to_g1(pp, to_bytes("bob"));
        // e(xP + h_A Q_A, yP + h_B Q_B)^s
        const auto left = g1_add(pp, g1_mul(pp, init.x(), pp.generator), g1_mul(pp, *init.h_A(), Q_A));
        const auto right = g1_add(pp, g1_mul(pp, h.responder.x(), pp.generator), g1_mul(pp, *init.h_B(), Q_B));
        const auto want = gt_exp(pp, pairing(pp, left, right), s);
        EXPECT_EQ(target(h.secret_a[0]), want);
        EXPECT_EQ(target(h.secret_b[0]), want);
    }
}

TEST(Session, ChenKudlaExponent)
{
    const auto& pp = fixtures::tiny();
    const oracle::Curve ref(pp);
    auto rng = fixtures::seeded("chen-kudla exponent");
    const auto base = oracle::from(pairing(pp, pp.generator, pp.generator));
    for (int i = 0; i < 5; ++i)
    {
        Fresh sok(Family::sok, rng);
        const auto h = analysis::run_handshake(lookup("Chen-Kudla"), pp, sok.parties, rng);
        const auto g = oracle::from(pp.generator);
        const auto qa = from_oracle(ref.dlog(g, oracle::from(hash_to_g1(pp, to_bytes("alice")))));
        const auto qb = from_oracle(ref.dlog(g, oracle::from(hash_to_g1(pp, to_bytes("bob")))));
        const auto s = sok.parties.domain.master_secret()->value;
        const mpz_class want = s * qa * qb * (h.initiator.x().value + h.responder.x().value) % pp.q;
        EXPECT_EQ(from_oracle(ref.dlog(base, oracle::from(target(h.secret_a[0])))), want);
    }
}

TEST(Session, HashedExponents)
{
    const auto& pp = fixtures::tiny();
    const oracle::Curve ref(pp);
    const auto g = oracle::from(pp.generator);
    const auto base = oracle::from(pairing(pp, pp.generator, pp.generator));
    auto rng = fixtures::seeded("hashed exponents");
    for (int i = 0; i < 5; ++i)
    {
        Fresh dh(Family::dh, rng);
        const auto e = analysis::run_handshake(lookup("ECKE-1N"), pp, dh.parties, rng);
        const mpz_class ecke = (e.initiator.x().value + e.initiator.h_A()->value) *
                               (e.responder.x().value + e.initiator.h_B()->value) % pp.q;
        EXPECT_EQ(from_oracle(ref.dlog(g, oracle::from(point(e.secret_a[0])))), ecke);

        Fresh sok(Family::sok, rng);
        const auto w = analysis::run_handshake(lookup("Wang/Chow-Choo"), pp, sok.parties, rng);
        const auto qa = from_oracle(ref.dlog(g, oracle::from(hash_to_g1(pp, to_bytes("alice")))));
        const auto qb = from_oracle(ref.dlog(g, oracle::from(hash_to_g1(pp, to_bytes("bob")))));
        const mpz_class want = sok.parties.domain.master_secret()->value * qa * qb *
                               (w.initiator.x().value + w.initiator.h_A()->value) *
                               (w.responder.x().value + w.initiator.h_B()->value) % pp.q;
        EXPECT_EQ(from_oracle(ref.dlog(base, oracle::from(target(w.secret_a[0])))), want);
    }
}

TEST(Session, InvertedVariantAgrees)
{
    const auto& pp = fixtures::tiny();
    auto rng = fixtures::seeded("inverted");
    for (const auto* name : {"Smart", "Shim", "SYL", "ID-MQV"})
    {
        Fresh inv(Family::sok, rng, true);
        const auto h = analysis::run_handshake(lookup(name), pp, inv.parties, rng, {.inverted = true});
        EXPECT_TRUE(h.agreed()) << name;
        EXPECT_EQ(decode_g1(pp, *h.initiator.message()), g1_mul(pp, h.initiator.x(), inv.P0)) << name;
    }
}

TEST(Kdf, DomainSeparationAndOrder)
{
    const auto& pp = fixtures::tiny();
    auto rng = fixtures::seeded("kdf");
    Fresh dh(Family::dh, rng);
    const auto h = analysis::run_handshake(lookup("UM"), pp, dh.parties, rng);
    const auto& t = h.transcript;
    const auto k = derive_session_key(pp, "UM", "alice", "bob", t, h.secret_a);
    EXPECT_EQ(k, h.key_a);
    EXPECT_EQ(derive_session_key(pp, "UM", "bob", "alice", t, h.secret_a), k);
    EXPECT_NE(derive_session_key(pp, "RYY", "alice", "bob", t, h.secret_a), k);
    const std::vector<Value> swapped{h.secret_a[1], h.secret_a[0]};
    EXPECT_NE(derive_session_key(pp, "UM", "alice", "bob", t, swapped), k);
    const Bytes ctx{1, 2, 3};
    EXPECT_NE(derive_session_key(pp, "UM", "alice", "bob", t, h.secret_a, ctx), k);
    EXPECT_EQ(h.initiator.derive_key(ctx), h.responder.derive_key(ctx));
}

TEST(Transcript, JsonLinesRoundTrip)
{
    const auto& pp = fixtures::tiny();
    auto rng = fixtures::seeded("transcript");
    Fresh sok(Family::sok, rng);
    const auto h = analysis::run_handshake(lookup("SYL"), pp, sok.parties, rng);
    const auto text = h.transcript.to_jsonl();
    const auto back = Transcript::from_jsonl(text);
    EXPECT_EQ(back.to_jsonl(), text);
    EXPECT_EQ(back.canonical_bytes(), h.transcript.canonical_bytes());
    EXPECT_EQ(back.protocol(), "SYL");
    EXPECT_EQ(back.params_reference(), params_ref(pp));
    ASSERT_EQ(back.messages().size(), 2u);
    EXPECT_EQ(back.messages()[0].sender_id, "alice");
    EXPECT_EQ(back.messages()[1].sender_id, "bob");
    EXPECT_EQ(h.responder.transcript().canonical_bytes(), h.transcript.canonical_bytes());

    EXPECT_THROW(Transcript::from_jsonl(""), ConfigError);
    EXPECT_THROW(Transcript::from_jsonl("{\"protocol\":\"x\"}"), ConfigError);
    auto bad = text;
    bad.replace(bad.find("\"seq\":1"), 7, "\"seq\":5");
    EXPECT_THROW(Transcript::from_jsonl(bad), ConfigError);
}

TEST(Transcript, CanonicalBytesAreInjective)
{
    Transcript a("p", "r", "ab", "c");
    a.append("ab", ValueKind::g1, Bytes{1, 2});
    Transcript b("p", "r", "ab", "c");
    b.append("a", ValueKind::g1, Bytes{'b', 1, 2});
    EXPECT_NE(a.canonical_bytes(), b.canonical_bytes());
    Transcript c("p", "r", "ab", "c");
    c.append("ab", ValueKind::gt, Bytes{1, 2});
    EXPECT_NE(a.canonical_bytes(), c.canonical_bytes());
}
