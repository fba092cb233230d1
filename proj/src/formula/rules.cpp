// SPDX-License-Identifier: Apache-2.0
#include "idka/formula/rules.hpp"

#include "canonical.hpp"
#include "idka/errors.hpp"
#include "idka/formula/normalize.hpp"

namespace idka::formula
{

namespace
{
using namespace canon;

struct Term
{
    Monomial rest;  // monomial with the own static key factored out
    mpz_class coeff;
    int static_exp;
    std::string element;
};

std::string describe(const Term& t, const std::string& static_name)
{
    Monomial m = t.rest;
    if (t.static_exp != 0)
        m[Key{static_name, nullptr}] = t.static_exp;
    Linear l{{t.element, monomial_poly(m, t.coeff)}};
    return render(to_expr(l));
}

bool mentions(const Monomial& m, std::string_view name)
{
    for (const auto& [k, e] : m)
        if (k.name == name)
            return true;
    return false;
}

std::vector<Term> split_terms(const Linear& l)
{
    std::vector<Term> terms;
    for (const auto& [element, poly] : l)
        for (const auto& [m, c] : poly)
        {
            Term t{m, c, 0, element};
            const Key static_key{"a", nullptr};
            if (auto it = t.rest.find(static_key); it != t.rest.end())
            {
                t.static_exp = it->second;
                t.rest.erase(it);
            }
            terms.push_back(std::move(t));
        }
    return terms;
}

[[noreturn]] void untranslatable(const Term& t, const std::string& why)
{
    throw FormulaError(FormulaError::Kind::untranslatable, 0, "term '" + describe(t, "a") + "' is untranslatable: " + why);
}

void check_atoms(const Term& t)
{
    for (const char* forbidden : {"b", "y", "s", "u_A", "u_B"})
        if (mentions(t.rest, forbidden))
            untranslatable(t, std::string{"no rule covers atom "} + forbidden);
    for (const auto& [k, e] : t.rest)
        if (k.inverse_of)
            untranslatable(t, "no rule covers inverses of sums");
    if (t.element == "F_AB")
        untranslatable(t, "F_AB terms have no substitution rule");
    if (t.element == "P_0" || t.element == "S_A" || t.element == "S_B")
        untranslatable(t, "input is not a DH-family formula");
}

Linear single(const std::string& element, const Monomial& m, const mpz_class& c)
{
    return Linear{{element, monomial_poly(m, c)}};
}

Linear atom_linear(const std::string& name)
{
    return Linear{{name, constant(1)}};
}

Form translate_sok(const Linear& l)
{
    const auto terms = split_terms(l);
    bool has_static = false;
    for (const auto& t : terms)
        has_static |= t.static_exp != 0;
    if (!has_static)
    {
        // ephemeral-only components (e.g. xyP) carry over unchanged
        for (const auto& t : terms)
            check_atoms(t);
        return l;
    }

    Bilinear out;
    for (const auto& t : terms)
    {
        check_atoms(t);
        const auto arg = single(t.element, t.rest, t.coeff);
        if (t.static_exp == 1)
            add_pairing(out, atom_linear("S_A"), arg);
        else if (t.static_exp == 0 && mentions(t.rest, "x"))
            add_pairing(out, atom_linear("P_0"), arg);
        else if (t.static_exp == 0)
            untranslatable(t, "neither static nor ephemeral");
        else
            untranslatable(t, "static key must appear with exponent 1");
    }
    return out;
}

Form translate_sk(const Linear& l)
{
    Bilinear out;
    for (const auto& t : split_terms(l))
    {
        check_atoms(t);
        if (t.static_exp == -1)
            add_pairing(out, atom_linear("S_A"), single(t.element, t.rest, t.coeff));
        else if (t.static_exp == 0 && t.element == "P")
            add_pairing(out, atom_linear("P"), single("P", t.rest, t.coeff));
        else if (t.static_exp == 0)
            untranslatable(t, "only multiples of P translate without the static key");
        else
            untranslatable(t, "the static key must appear inverted");
    }
    return out;
}

SecretFormula apply_as_a(const SecretFormula& f, RuleSet rules)
{
    SecretFormula out;
    for (const auto& c : f.components)
    {
        const auto form = canonicalize(c);
        const auto* l = std::get_if<Linear>(&form);
        if (!l)
            throw FormulaError(FormulaError::Kind::untranslatable, 0,
                "component '" + render(c) + "' is not a group element; the rules apply to DH formulas");
        out.components.push_back(to_expr(rules == RuleSet::sok ? translate_sok(*l) : translate_sk(*l)));
    }
    return out;
}
}  // namespace

std::string_view to_string(RuleSet r)
{
    return r == RuleSet::sok ? "sok" : "sk";
}

RuleSet rule_set_from_string(std::string_view name)
{
    if (name == "sok")
        return RuleSet::sok;
    if (name == "sk")
        return RuleSet::sk;
    throw ConfigError("unknown rule set '" + std::string{name} + "'");
}

SecretFormula apply_rules(const SecretFormula& f, RuleSet rules, Actor actor)
{
    if (actor == Actor::A)
        return apply_as_a(f, rules);
    return normalize(swap_roles(apply_as_a(swap_roles(f), rules)));
}

}  // namespace idka::formula
