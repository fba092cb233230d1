// SPDX-License-Identifier: Apache-2.0
#include "fixtures.hpp"

#include "idka/errors.hpp"
#include "idka/formula/equivalence.hpp"
#include "idka/formula/evaluate.hpp"
#include "idka/formula/normalize.hpp"
#include "idka/formula/rules.hpp"
#include "idka/protocol/catalog.hpp"

#include <gtest/gtest.h>

using namespace idka;
using namespace idka::formula;

namespace
{
std::string translate(std::string_view dh, RuleSet rules, Actor actor = Actor::A)
{
    return render(apply_rules(parse(dh), rules, actor));
}

std::string norm(std::string_view f)
{
    return render(normalize(parse(f)));
}

FormulaError::Kind error_kind(std::string_view text)
{
    try
    {
        parse(text);
    }
    catch (const FormulaError& e)
    {
        return e.kind();
    }
    ADD_FAILURE() << "parsed: " << text;
    return FormulaError::Kind::untranslatable;
}

/// Random well-typed expressions over the full atom set.
class Generator
{
public:
    explicit Generator(Rng& rng) : rng_(rng) {}

    Expr any(int depth)
    {
        switch (pick(3))
        {
        case 0:
            return scalar(depth);
        case 1:
            return element(depth);
        default:
            return target(depth);
        }
    }

    Expr scalar(int depth)
    {
        static const char* atoms[] = {"a", "b", "x", "y", "s", "h_A", "h_B"};
        if (depth <= 1 || pick(3) == 0)
            return pick(4) == 0 ? literal(1 + pick(5)) : atom(atoms[pick(7)], Sort::scalar);
        switch (pick(3))
        {
        case 0:
            return add({scalar(depth - 1), scalar(depth - 1)});
        case 1:
            return mul({scalar(depth - 1), scalar(depth - 1)});
        default:
            return inv(atom(atoms[pick(7)], Sort::scalar));
        }
    }

    Expr element(int depth)
    {
        static const char* atoms[] = {"P", "P_0", "Q_A", "Q_B", "T_A", "T_B", "S_A", "S_B", "F_AB"};
        if (depth <= 1 || pick(3) == 0)
            return atom(atoms[pick(9)], Sort::element);
        if (pick(2) == 0)
            return elem_add({element(depth - 1), element(depth - 1)});
        return scalar_mul(scalar(depth - 1), element(depth - 1));
    }

    Expr target(int depth)
    {
        if (depth <= 1)
            return pair(element(1), element(1));
        switch (pick(3))
        {
        case 0:
            return pair(element(depth - 1), element(depth - 1));
        case 1:
            return t_mul({target(depth - 1), target(depth - 1)});
        default:
            return t_exp(target(depth - 1), scalar(depth - 1));
        }
    }

private:
    unsigned long pick(unsigned long n) { return rng_.below(n).get_ui(); }
    Rng& rng_;
};
}  // namespace

TEST(Parse, TreeShapes)
{
    const auto f = parse_expr("a*T_B + x*Q_B");
    EXPECT_EQ(f->op, Op::elem_add);
    ASSERT_EQ(f->args.size(), 2u);
    EXPECT_EQ(f->args[0]->op, Op::scalar_mul);
    EXPECT_EQ(f->args[1]->op, Op::scalar_mul);
    EXPECT_EQ(f->sort, Sort::element);

    EXPECT_EQ(parse_expr("e(S_A, T_B + x*Q_B)")->op, Op::pair);
    EXPECT_EQ(parse_expr("e(S_A,T_B)^x")->op, Op::t_exp);
    EXPECT_EQ(parse_expr("inv(a)*T_B")->args[0]->op, Op::inv);
    EXPECT_EQ(parse("a*Q_B || x*T_B").components.size(), 2u);
    EXPECT_EQ(render(parse("a*P0")), "a*P_0");
}

TEST(Parse, TypeAndSyntaxErrors)
{
    EXPECT_EQ(error_kind("e(P, x)"), FormulaError::Kind::type);
    EXPECT_EQ(error_kind("a + P"), FormulaError::Kind::type);
    EXPECT_EQ(error_kind("P*P"), FormulaError::Kind::type);
    EXPECT_EQ(error_kind("inv(P)"), FormulaError::Kind::type);
    EXPECT_EQ(error_kind("a*T_B +"), FormulaError::Kind::syntax);
    EXPECT_EQ(error_kind("e(P, P"), FormulaError::Kind::syntax);
    EXPECT_EQ(error_kind("z*P"), FormulaError::Kind::syntax);
    EXPECT_EQ(error_kind(""), FormulaError::Kind::syntax);
    try
    {
        parse("e(P, x)");
    }
    catch (const FormulaError& e)
    {
        EXPECT_EQ(e.position(), 5u);
    }
}

TEST(Parse, RenderRoundTripOnCatalog)
{
    for (const auto& entry : protocol::catalog())
    {
        const auto opts = entry.parse_options();
        std::vector<std::string> all = entry.secret;
        all.insert(all.end(), entry.receiver_secret.begin(), entry.receiver_secret.end());
        if (entry.pkg_recover)
            all.insert(all.end(), entry.pkg_recover->begin(), entry.pkg_recover->end());
        if (entry.static_attack)
            all.insert(all.end(), entry.static_attack->begin(), entry.static_attack->end());
        for (const auto& text : all)
        {
            const auto f = parse(text, opts);
            const auto again = parse(render(f), opts);
            EXPECT_EQ(f, again) << entry.name << ": " << text;
            EXPECT_EQ(render(again), render(f));
            const auto n = normalize(f);
            EXPECT_EQ(parse(render(n), opts), n) << entry.name;
        }
    }
}

TEST(Normalize, CollectsPairingsOverACommonArgument)
{
    EXPECT_EQ(norm("e(P_0, x*Q_1)*e(S_A, h_A*Q_1)"), "e(x*P_0 + h_A*S_A, Q_1)");
    EXPECT_EQ(norm("e(S_A,T_B)*e(S_A, h_B*Q_B)"), "e(S_A, T_B + h_B*Q_B)");
    EXPECT_EQ(norm("e(S_A, T_B)^x"), norm("e(S_A, x*T_B)"));
    EXPECT_EQ(norm("e(x*S_A, T_B)"), norm("e(S_A, T_B)^x"));
    EXPECT_EQ(norm("e(T_B, S_A)"), "e(S_A, T_B)");
}

TEST(Normalize, IdempotentOnCatalog)
{
    for (const auto& entry : protocol::catalog())
    {
        const auto once = normalize(entry.secret_formula());
        EXPECT_EQ(normalize(once), once) << entry.name;
    }
}

TEST(Normalize, PreservesValueOnRandomFormulas)
{
    const auto& pp = fixtures::tiny();
    auto rng = fixtures::seeded("random formulas");
    Generator gen(rng);
    int checked = 0;
    for (int i = 0; i < 150; ++i)
    {
        const auto f = gen.any(1 + static_cast<int>(rng.below(5).get_ui()));
        const auto n = normalize(f);
        EXPECT_TRUE(equal(normalize(n), n)) << render(f) << "  ->  " << render(n);
        for (int t = 0; t < 20; ++t)
        {
            const auto env = random_assignment(pp, RuleSet::sok, rng);
            EXPECT_EQ(evaluate(pp, f, env), evaluate(pp, n, env)) << render(f) << "  vs  " << render(n);
            ++checked;
        }
    }
    EXPECT_EQ(checked, 3000);
}

TEST(StructuralEquiv, Examples)
{
    EXPECT_TRUE(structural_equiv(parse("x*a*T_B"), parse("a*(x*T_B)")));
    EXPECT_TRUE(structural_equiv(parse("e(S_A, T_B)*e(P_0, x*Q_B)"), parse("e(P_0, x*Q_B)*e(S_A, T_B)")));
    EXPECT_FALSE(structural_equiv(parse("a*T_B + x*Q_B"), parse("a*T_B + a*x*Q_B")));
    EXPECT_TRUE(structural_equiv(apply_rules(parse("(x + h_A*a)*(T_B + h_B*Q_B)"), RuleSet::sok),
                                 parse("e(x*P_0 + h_A*S_A, T_B + h_B*Q_B)")));
}

TEST(Rules, SokExamples)
{
    EXPECT_EQ(translate("a*Q_B", RuleSet::sok), "e(S_A, Q_B)");
    EXPECT_EQ(translate("a*T_B + x*Q_B", RuleSet::sok), "e(S_A, T_B)*e(P_0, x*Q_B)");
    EXPECT_EQ(translate("a*Q_1 + x*Q_2", RuleSet::sok), "e(S_A, Q_1)*e(P_0, x*Q_2)");
    EXPECT_EQ(translate("a*T_B + a*x*Q_B", RuleSet::sok), "e(S_A, T_B + x*Q_B)");
    EXPECT_EQ(translate("(x + h_A*a)*(T_B + h_B*Q_B)", RuleSet::sok), "e(x*P_0 + h_A*S_A, T_B + h_B*Q_B)");
    EXPECT_EQ(translate("(x + h_A)*a*(T_B + h_B*Q_B)", RuleSet::sok), "e((x + h_A)*S_A, T_B + h_B*Q_B)");
    EXPECT_EQ(translate("a*Q_B || x*T_B", RuleSet::sok), "e(S_A, Q_B) || x*T_B");
}

TEST(Rules, SkExamples)
{
    EXPECT_EQ(translate("inv(a)*Q", RuleSet::sk), "e(S_A, Q)");
    EXPECT_EQ(translate("x*P", RuleSet::sk), "e(P, P)^x");
    EXPECT_EQ(translate("x*(inv(a)*T_B)", RuleSet::sk), norm("e(S_A, T_B)^x"));
    EXPECT_EQ(translate("inv(a)*T_B + x*P", RuleSet::sk), "e(S_A, T_B)*e(P, P)^x");
}

TEST(Rules, ActorBUsesTheOtherKeys)
{
    EXPECT_EQ(translate("b*T_A + y*Q_A", RuleSet::sok, Actor::B), "e(S_B, T_A)*e(P_0, y*Q_A)");
    EXPECT_EQ(translate("inv(b)*T_A", RuleSet::sk, Actor::B), "e(S_B, T_A)");
}

TEST(Rules, UntranslatableTermsAreErrors)
{
    for (const auto* f : {"x*F_AB", "a*b*P", "inv(a)*T_B", "a*x*P + b*T_B"})
    {
        try
        {
            apply_rules(parse(f), RuleSet::sok);
            ADD_FAILURE() << f;
        }
        catch (const FormulaError& e)
        {
            EXPECT_EQ(e.kind(), FormulaError::Kind::untranslatable) << f;
        }
    }
    EXPECT_THROW(apply_rules(parse("a*T_B"), RuleSet::sk), FormulaError);
    EXPECT_THROW(apply_rules(parse("e(S_A, T_B)"), RuleSet::sok), FormulaError);
}

TEST(SemanticEquiv, CorrespondenceMode)
{
    const auto& pp = fixtures::tiny();
    auto rng = fixtures::seeded("semantic");
    const auto mqv = parse("(x + h_A*a)*(T_B + h_B*Q_B)");
    const auto id_mqv = parse("e(x*P_0 + h_A*S_A, T_B + h_B*Q_B)");
    EXPECT_TRUE(semantic_equiv(pp, mqv, id_mqv, RuleSet::sok, EquivMode::correspondence, 20, rng));
    EXPECT_FALSE(semantic_equiv(pp, parse("a*T_B + x*Q_B"), parse("e(S_A, T_B + x*Q_B)"), RuleSet::sok,
                                EquivMode::correspondence, 20, rng));
    EXPECT_TRUE(semantic_equiv(pp, parse("(x + h_A)*inv(a)*(T_B + h_B*Q_A)"),
                               parse("e(S_A, T_B + h_B*Q_A)^(x + h_A)"), RuleSet::sk, EquivMode::correspondence, 20,
                               rng));
}

TEST(SemanticEquiv, PlainMode)
{
    const auto& pp = fixtures::tiny();
    auto rng = fixtures::seeded("plain");
    const auto f = parse("e(S_A, T_B)*e(P_0, x*Q_B)");
    EXPECT_TRUE(semantic_equiv(pp, f, f, RuleSet::sok, EquivMode::plain, 10, rng));
    EXPECT_TRUE(semantic_equiv(pp, parse("e(S_A, Q_B)"), parse("e(Q_A, Q_B)^s"), RuleSet::sok, EquivMode::plain, 10, rng));
    EXPECT_FALSE(semantic_equiv(pp, parse("e(S_A, Q_B)"), parse("e(Q_A, Q_B)"), RuleSet::sok, EquivMode::plain, 10, rng));
    EXPECT_THROW(semantic_equiv(pp, f, f, RuleSet::sok, EquivMode::plain, 0, rng), ConfigError);
}

TEST(Evaluate, MissingAtomIsAConfigurationError)
{
    const auto& pp = fixtures::tiny();
    Assignment env;
    env["P"] = pp.generator;
    try
    {
        evaluate(pp, parse_expr("x*P"), env);
        ADD_FAILURE();
    }
    catch (const ConfigError& e)
    {
        EXPECT_NE(std::string(e.what()).find("x"), std::string::npos);
    }
}

TEST(SwapRoles, ExchangesParties)
{
    EXPECT_EQ(render(swap_roles(parse_expr("a*T_B + x*Q_B"))), "b*T_A + y*Q_A");
    EXPECT_EQ(render(swap_roles(parse_expr("e(S_A, T_B + h_B*Q_B)"))), "e(S_B, T_A + h_A*Q_A)");
    EXPECT_EQ(render(swap_roles(swap_roles(parse_expr("inv(a)*F_AB + u_A*P")))), "inv(a)*F_AB + u_A*P");
}
