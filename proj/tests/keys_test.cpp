// SPDX-License-Identifier: Apache-2.0
#include "fixtures.hpp"

#include "idka/backend/arith.hpp"
#include "idka/backend/map.hpp"
#include "idka/errors.hpp"
#include "idka/keys/key_settings.hpp"

#include <gtest/gtest.h>

using namespace idka;

TEST(Keys, DhPairsAndStaticSecret)
{
    const auto& pp = fixtures::tiny();
    auto rng = fixtures::seeded("dh keys");
    const auto a = dh_keygen(pp, "alice", rng);
    const auto b = dh_keygen(pp, "bob", rng);
    EXPECT_EQ(a.Q, g1_mul(pp, a.a, pp.generator));
    const auto fa = static_secret(pp, a, b.Q);
    const auto fb = static_secret(pp, b, a.Q);
    EXPECT_EQ(fa.value, fb.value);
    EXPECT_EQ(std::get<G1Point>(fa.value), g1_mul(pp, scalar_mul(pp, a.a, b.a), pp.generator));
}

TEST(Keys, SokExtractionAndSharedSecret)
{
    const auto& pp = fixtures::tiny();
    auto rng = fixtures::seeded("sok keys");
    const auto m = sok_setup(pp, rng, false);
    EXPECT_EQ(m.P0, g1_mul(pp, m.s, pp.generator));
    const auto a = sok_extract(pp, m, "alice");
    const auto b = sok_extract(pp, m, "bob");
    EXPECT_EQ(a.Q, hash_to_g1(pp, to_bytes("alice")));
    EXPECT_EQ(a.S, g1_mul(pp, m.s, a.Q));
    // e(S_A, Q_B) = e(Q_A, Q_B)^s = e(Q_A, S_B)
    const auto fa = static_secret(pp, a, b.Q);
    const auto fb = static_secret(pp, b, a.Q);
    EXPECT_EQ(fa.value, fb.value);
    EXPECT_EQ(std::get<GtElement>(fa.value), gt_exp(pp, pairing(pp, a.Q, b.Q), m.s));
}

TEST(Keys, InvertedSokMasterKey)
{
    const auto& pp = fixtures::tiny();
    auto rng = fixtures::seeded("sok inverted");
    const auto m = sok_setup(pp, rng, true);
    EXPECT_TRUE(m.inverted);
    EXPECT_EQ(g1_mul(pp, m.s, m.P0), pp.generator);
    const auto a = sok_extract(pp, m, "alice");
    EXPECT_EQ(a.S, g1_mul(pp, m.s, a.Q));
}

TEST(Keys, SkExtraction)
{
    const auto& pp = fixtures::tiny();
    auto rng = fixtures::seeded("sk keys");
    const auto m = sk_setup(pp, rng);
    const auto a = sk_extract(pp, m, "alice");
    EXPECT_EQ(a.u, hash_to_zq(pp, to_bytes("alice")));
    EXPECT_EQ(a.Qpub, sk_public(pp, m.P0, "alice"));
    EXPECT_EQ(a.Qpub, g1_mul(pp, scalar_add(pp, m.s, a.u), pp.generator));
    // S_A = (s + u_A)^-1 P, so e(S_A, Q_A) = e(P, P)
    EXPECT_EQ(pairing(pp, a.S, a.Qpub), pairing(pp, pp.generator, pp.generator));
}

TEST(Keys, SkExtractionRejectsDegenerateIdentity)
{
    const auto& pp = fixtures::tiny();
    const auto u = hash_to_zq(pp, to_bytes("victim"));
    const auto s = scalar_neg(pp, u);
    const SkMaster m{s, g1_mul(pp, s, pp.generator)};
    EXPECT_THROW(sk_extract(pp, m, "victim"), ExtractionError);
}

TEST(Keys, KeyDomainEnrollsPerSetting)
{
    const auto& pp = fixtures::tiny();
    auto rng = fixtures::seeded("domain");
    for (auto setting : {Setting::dh, Setting::sok, Setting::sok_inv, Setting::sk})
    {
        const auto d = KeyDomain::create(pp, setting, rng);
        EXPECT_EQ(d.setting(), setting);
        EXPECT_EQ(d.master_secret().has_value(), setting != Setting::dh);
        const auto ident = d.enroll(pp, "carol", rng);
        EXPECT_EQ(id_of(ident), "carol");
        EXPECT_TRUE(in_subgroup(pp, public_key_of(ident)));
    }
}

TEST(Keys, KeyFilesRoundTrip)
{
    const auto& pp = fixtures::tiny();
    auto rng = fixtures::seeded("key files");
    for (auto setting : {Setting::dh, Setting::sok, Setting::sok_inv, Setting::sk})
    {
        const auto d = KeyDomain::create(pp, setting, rng);
        const auto again = master_from_json(pp, master_to_json(pp, d, true));
        EXPECT_EQ(again.setting(), setting);
        EXPECT_EQ(again.master_public(), d.master_public());

        const auto ident = d.enroll(pp, "dave", rng);
        const auto j = identity_to_json(pp, ident, setting, true);
        const auto back = identity_from_json(pp, j);
        EXPECT_EQ(id_of(back), "dave");
        EXPECT_EQ(public_key_of(back), public_key_of(ident));
        EXPECT_THROW(identity_from_json(pp, identity_to_json(pp, ident, setting, false)), ConfigError);
    }
}

TEST(Keys, TamperedKeyFilesRejected)
{
    const auto& pp = fixtures::tiny();
    auto rng = fixtures::seeded("tampered files");
    const auto d = KeyDomain::create(pp, Setting::sok, rng);
    auto j = identity_to_json(pp, d.enroll(pp, "erin", rng), Setting::sok, true);
    j["id"] = "mallory";
    EXPECT_THROW(identity_from_json(pp, j), ConfigError);

    auto m = master_to_json(pp, d, true);
    m["public"]["P0"] = identity_to_json(pp, d.enroll(pp, "x", rng), Setting::sok, false)["public"]["Q"];
    EXPECT_THROW(master_from_json(pp, m), ConfigError);
    EXPECT_THROW(master_from_json(pp, master_to_json(pp, d, false)), ConfigError);
}
