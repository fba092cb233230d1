// SPDX-License-Identifier: Apache-2.0
#include "idka/protocol/catalog.hpp"

#include "idka/errors.hpp"

#include <algorithm>

namespace idka::protocol
{
namespace
{
using Formulas = std::vector<std::string>;

struct Builder
{
    CatalogEntry e;

    Builder(std::string name, Family f, Kind k)
    {
        e.name = std::move(name);
        e.family = f;
        e.kind = k;
    }
    Builder& message(std::string m)
    {
        e.message = std::move(m);
        return *this;
    }
    Builder& secret(Formulas s)
    {
        e.secret = std::move(s);
        return *this;
    }
    Builder& receiver(Formulas s)
    {
        e.receiver_secret = std::move(s);
        return *this;
    }
    Builder& escrow(Formulas s)
    {
        e.pkg_recover = std::move(s);
        e.flags.escrowed = true;
        return *this;
    }
    Builder& static_attack(Formulas s)
    {
        e.static_attack = std::move(s);
        e.flags.pfs = false;
        return *this;
    }
    Builder& kci(std::string m, Formulas s)
    {
        e.kci_attack = KciAttack{std::move(m), std::move(s)};
        e.flags.kci_resilient = false;
        return *this;
    }
    Builder& broken()
    {
        e.flags.known_broken = true;
        return *this;
    }
    Builder& counterpart(std::string name, bool by_rules)
    {
        e.counterpart = std::move(name);
        e.rule_derived = by_rules;
        return *this;
    }
    Builder& inverted(std::string m, Formulas s)
    {
        e.inverted = InvertedVariant{std::move(m), std::move(s)};
        return *this;
    }
    Builder& note(std::string n)
    {
        e.note = std::move(n);
        return *this;
    }
    operator CatalogEntry() { return std::move(e); }
};

constexpr auto dh = Family::dh;
constexpr auto sok = Family::sok;
constexpr auto sk = Family::sk;
constexpr auto nik = Kind::non_interactive;
constexpr auto transport = Kind::transport;
constexpr auto two = Kind::two_message;

std::vector<CatalogEntry> build()
{
    std::vector<CatalogEntry> c;

    // Diffie-Hellman family, certified static keys Q = aP.
    c.push_back(Builder("Static-DH", dh, nik)
                    .secret({"a*Q_B"})
                    .static_attack({"a*Q_B"})
                    .kci("", {"a*Q_B"})
                    .counterpart("SOK-NIKD", true));
    c.push_back(Builder("Semi-static-DH", dh, transport)
                    .message("x*P")
                    .secret({"x*Q_B"})
                    .receiver({"a*T_B"})
                    .static_attack({"b*T_A"})
                    .kci("y*P", {"y*Q_A"})
                    .counterpart("Semi-static-SOK", false));
    c.push_back(Builder("Ephemeral-DH", dh, two)
                    .message("x*P")
                    .secret({"x*T_B"})
                    .kci("y*P", {"y*T_A"})
                    .counterpart("Ephemeral-SOK", false)
                    .note("unauthenticated"));
    c.push_back(Builder("UM", dh, two)
                    .message("x*P")
                    .secret({"a*Q_B", "x*T_B"})
                    .kci("y*P", {"a*Q_B", "y*T_A"})
                    .counterpart("RYY", true));
    c.push_back(Builder("MTI/A0", dh, two)
                    .message("x*P")
                    .secret({"a*T_B + x*Q_B"})
                    .static_attack({"a*T_B + b*T_A"})
                    .counterpart("Smart", true));
    c.push_back(Builder("MTI/A1", dh, two)
                    .message("x*Q_A")
                    .secret({"a*T_B + a*x*Q_B"})
                    .static_attack({"a*T_B + b*T_A"})
                    .counterpart("Chen-Kudla", true));
    c.push_back(Builder("MTI/B0", dh, two)
                    .message("x*Q_B")
                    .secret({"inv(a)*T_B + x*P"})
                    .static_attack({"inv(a)*T_B + inv(b)*T_A"})
                    .counterpart("MB-2", true));
    c.push_back(Builder("MTI/C0", dh, two)
                    .message("x*Q_B")
                    .secret({"x*(inv(a)*T_B)"})
                    .counterpart("MB-1", true));
    c.push_back(Builder("MTI/C1", dh, two)
                    .message("x*F_AB")
                    .secret({"x*T_B"})
                    .kci("y*F_AB", {"y*T_A"})
                    .counterpart("Scott", false)
                    .note("F_AB = abP"));
    c.push_back(Builder("HMQV", dh, two)
                    .message("x*P")
                    .secret({"(x + h_A*a)*(T_B + h_B*Q_B)"})
                    .counterpart("ID-MQV", true));
    c.push_back(Builder("MQV-1", dh, two)
                    .message("x*Q_A")
                    .secret({"(x + h_A)*a*(T_B + h_B*Q_B)"})
                    .counterpart("Wang/Chow-Choo", true));
    c.push_back(Builder("Reduced-MQV", dh, two)
                    .message("x*P")
                    .secret({"(x + a)*(T_B + Q_B)"})
                    .broken()
                    .counterpart("Shim", true)
                    .note("HMQV with h_A = h_B = 1"));
    c.push_back(Builder("nID-SYL", dh, two)
                    .message("x*P")
                    .secret({"(x + a)*(T_B + Q_B)", "x*T_B"})
                    .counterpart("SYL", true));
    c.push_back(Builder("ECKE-1N", dh, two)
                    .message("x*Q_B")
                    .secret({"(x + h_A)*inv(a)*(T_B + h_B*Q_A)"})
                    .counterpart("eMB", true));
    c.push_back(Builder("Enhanced-MTI/C1", dh, two)
                    .message("x*F_AB")
                    .secret({"(x + h_A)*(T_B + h_B*F_AB)"})
                    .kci("y*F_AB", {"(y + h_B)*(T_A + h_A*F_AB)"})
                    .note("no ID-based counterpart is known"));
    c.push_back(Builder("Hughes", dh, transport)
                    .message("x*Q_B")
                    .secret({"x*P"})
                    .receiver({"inv(a)*T_B"})
                    .static_attack({"inv(b)*T_A"})
                    .kci("y*Q_A", {"y*P"})
                    .counterpart("SK-transport", true));
    c.push_back(Builder("Xie-DH", dh, two)
                    .message("x*Q_B")
                    .secret({"x*(inv(a)*T_B) + x*P + inv(a)*T_B"})
                    .broken()
                    .counterpart("Xie-ID", true)
                    .note("K = (x + y + xy)P"));
    c.push_back(Builder("LYL-DH", dh, two)
                    .message("x*Q_B")
                    .secret({"inv(a)*T_B + x*P", "x*(inv(a)*T_B)"})
                    .counterpart("LYL-ID", true)
                    .note("K = (x + y)P || xyP"));

    // SOK family: Q = H(ID), S = sQ, P0 = sP.
    c.push_back(Builder("SOK-NIKD", sok, nik)
                    .secret({"e(S_A, Q_B)"})
                    .escrow({"e(Q_A, Q_B)^s"})
                    .static_attack({"e(S_A, Q_B)"})
                    .kci("", {"e(S_A, Q_B)"})
                    .counterpart("Static-DH", true));
    c.push_back(Builder("Semi-static-SOK", sok, transport)
                    .message("x*P")
                    .secret({"e(Q_B, P_0)^x"})
                    .receiver({"e(S_A, T_B)"})
                    .escrow({"e(Q_B, T_A)^s"})
                    .static_attack({"e(S_B, T_A)"})
                    .kci("y*P", {"e(Q_A, P_0)^y"})
                    .counterpart("Semi-static-DH", false));
    c.push_back(Builder("Ephemeral-SOK", sok, two)
                    .message("x*P")
                    .secret({"e(x*P_0, T_B)"})
                    .escrow({"e(T_A, T_B)^s"})
                    .kci("y*P", {"e(y*P_0, T_A)"})
                    .counterpart("Ephemeral-DH", false)
                    .note("equals e(P, P)^sxy"));
    c.push_back(Builder("RYY", sok, two)
                    .message("x*P")
                    .secret({"e(S_A, Q_B)", "x*T_B"})
                    .kci("y*P", {"e(S_A, Q_B)", "y*T_A"})
                    .counterpart("UM", true));
    c.push_back(Builder("Escrowable-RYY", sok, two)
                    .message("x*P")
                    .secret({"e(S_A, Q_B)", "e(x*P_0, T_B)"})
                    .escrow({"e(Q_A, Q_B)^s", "e(T_A, T_B)^s"})
                    .kci("y*P", {"e(S_A, Q_B)", "e(y*P_0, T_A)"})
                    .note("RYY with xyP replaced by e(xP_0, yP)"));
    c.push_back(Builder("Smart", sok, two)
                    .message("x*P")
                    .secret({"e(S_A, T_B)*e(P_0, x*Q_B)"})
                    .escrow({"e(Q_A, T_B)^s*e(Q_B, T_A)^s"})
                    .static_attack({"e(S_A, T_B)*e(S_B, T_A)"})
                    .counterpart("MTI/A0", true)
                    .inverted("x*P_0", {"e(S_A, T_B)*e(P, x*Q_B)"}));
    c.push_back(Builder("Chen-Kudla", sok, two)
                    .message("x*Q_A")
                    .secret({"e(S_A, T_B + x*Q_B)"})
                    .escrow({"e(T_B, Q_A)^s*e(T_A, Q_B)^s"})
                    .static_attack({"e(S_A, T_B)*e(S_B, T_A)"})
                    .counterpart("MTI/A1", true));
    c.push_back(Builder("Wang/Chow-Choo", sok, two)
                    .message("x*Q_A")
                    .secret({"e((x + h_A)*S_A, T_B + h_B*Q_B)"})
                    .escrow({"e(T_A + h_A*Q_A, T_B + h_B*Q_B)^s"})
                    .counterpart("MQV-1", true));
    c.push_back(Builder("Shim", sok, two)
                    .message("x*P")
                    .secret({"e(x*P_0 + S_A, T_B + Q_B)"})
                    .escrow({"e(T_A + Q_A, T_B + Q_B)^s"})
                    .broken()
                    .counterpart("Reduced-MQV", true)
                    .inverted("x*P_0", {"e(x*P + S_A, T_B + Q_B)"}));
    c.push_back(Builder("SYL", sok, two)
                    .message("x*P")
                    .secret({"e(x*P_0 + S_A, T_B + Q_B)", "x*T_B"})
                    .counterpart("nID-SYL", true)
                    .inverted("x*P_0", {"e(x*P + S_A, T_B + Q_B)", "x*T_B"}));
    c.push_back(Builder("ID-MQV", sok, two)
                    .message("x*P")
                    .secret({"e(x*P_0 + h_A*S_A, T_B + h_B*Q_B)"})
                    .escrow({"e(T_A + h_A*Q_A, T_B + h_B*Q_B)^s"})
                    .counterpart("HMQV", true)
                    .inverted("x*P_0", {"e(x*P + h_A*S_A, T_B + h_B*Q_B)"}));
    c.push_back(Builder("Escrowless-ID-MQV", sok, two)
                    .message("x*P")
                    .secret({"e(x*P_0 + h_A*S_A, T_B + h_B*Q_B)", "x*T_B"})
                    .note("ID-MQV with xyP appended"));
    c.push_back(Builder("Scott", sok, two)
                    .message("e(S_A, Q_B)^x")
                    .secret({"T_B^x"})
                    .kci("e(S_A, Q_B)^y", {"T_A^y"})
                    .counterpart("MTI/C1", false)
                    .note("messages are target-group elements"));

    // SK family: S = (s + u)^-1 P, Q = P0 + uP.
    c.push_back(Builder("SK-transport", sk, transport)
                    .message("x*Q_B")
                    .secret({"e(P, P)^x"})
                    .receiver({"e(T_B, S_A)"})
                    .escrow({"e(T_A, inv(s + u_B)*P)"})
                    .static_attack({"e(T_A, S_B)"})
                    .kci("y*Q_A", {"e(P, P)^y"})
                    .counterpart("Hughes", true));
    c.push_back(Builder("MB-1", sk, two)
                    .message("x*Q_B")
                    .secret({"e(S_A, T_B)^x"})
                    .counterpart("MTI/C0", true));
    c.push_back(Builder("MB-2", sk, two)
                    .message("x*Q_B")
                    .secret({"e(S_A, T_B)*e(P, P)^x"})
                    .escrow({"e(inv(s + u_A)*P, T_B)*e(inv(s + u_B)*P, T_A)"})
                    .static_attack({"e(S_A, T_B)*e(S_B, T_A)"})
                    .counterpart("MTI/B0", true)
                    .note("K = e(P, P)^(x + y)"));
    c.push_back(Builder("eMB", sk, two)
                    .message("x*Q_B")
                    .secret({"e(S_A, T_B + h_B*Q_A)^(x + h_A)"})
                    .counterpart("ECKE-1N", true));
    c.push_back(Builder("Xie-ID", sk, two)
                    .message("x*Q_B")
                    .secret({"e(S_A, T_B)^x*e(P, P)^x*e(S_A, T_B)"})
                    .broken()
                    .counterpart("Xie-DH", true));
    c.push_back(Builder("LYL-ID", sk, two)
                    .message("x*Q_B")
                    .secret({"e(S_A, T_B)*e(P, P)^x", "e(S_A, T_B)^x"})
                    .counterpart("LYL-DH", true));
    return c;
}

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return out;
}

formula::SecretFormula parse_all(const std::vector<std::string>& parts, formula::ParseOptions opts)
{
    formula::SecretFormula f;
    for (const auto& p : parts)
        f.components.push_back(formula::parse_expr(p, opts));
    return f;
}
}  // namespace

std::string_view to_string(Family f)
{
    switch (f)
    {
    case Family::dh:
        return "DH";
    case Family::sok:
        return "SOK";
    case Family::sk:
        return "SK";
    }
    return "?";
}

std::string_view to_string(Kind k)
{
    switch (k)
    {
    case Kind::non_interactive:
        return "non_interactive";
    case Kind::transport:
        return "transport";
    case Kind::two_message:
        return "two_message";
    }
    return "?";
}

Family family_from_string(std::string_view name)
{
    const auto n = lower(name);
    if (n == "dh")
        return Family::dh;
    if (n == "sok")
        return Family::sok;
    if (n == "sk")
        return Family::sk;
    throw ConfigError("unknown protocol family: " + std::string(name));
}

Setting setting_of(Family f)
{
    switch (f)
    {
    case Family::dh:
        return Setting::dh;
    case Family::sok:
        return Setting::sok;
    case Family::sk:
        return Setting::sk;
    }
    return Setting::dh;
}

bool CatalogEntry::target_messages() const noexcept
{
    return message.rfind("e(", 0) == 0;
}

formula::ParseOptions CatalogEntry::parse_options() const noexcept
{
    return {.target_messages = target_messages()};
}

formula::SecretFormula CatalogEntry::secret_formula(bool receiver) const
{
    return parse_all(receiver && kind == Kind::transport ? receiver_secret : secret, parse_options());
}

formula::Expr CatalogEntry::message_formula() const
{
    if (message.empty())
        throw ConfigError(name + " has no protocol message");
    return formula::parse_expr(message);
}

bool CatalogEntry::uses_h() const
{
    auto mentions = [](const std::vector<std::string>& fs) {
        return std::any_of(fs.begin(), fs.end(), [](const std::string& f) { return f.find("h_") != std::string::npos; });
    };
    return mentions(secret) || mentions(receiver_secret) || (pkg_recover && mentions(*pkg_recover)) ||
           (static_attack && mentions(*static_attack)) || (kci_attack && mentions(kci_attack->secret)) ||
           (inverted && mentions(inverted->secret));
}

const std::vector<CatalogEntry>& catalog()
{
    static const std::vector<CatalogEntry> entries = build();
    return entries;
}

const CatalogEntry* find(std::string_view name) noexcept
{
    const auto key = lower(name);
    for (const auto& e : catalog())
        if (lower(e.name) == key)
            return &e;
    return nullptr;
}

const CatalogEntry& lookup(std::string_view name)
{
    if (const auto* e = find(name))
        return *e;
    throw ConfigError("unknown protocol: " + std::string(name));
}

std::vector<const CatalogEntry*> secure_catalog()
{
    std::vector<const CatalogEntry*> out;
    for (const auto& e : catalog())
        if (!e.flags.known_broken)
            out.push_back(&e);
    return out;
}

std::optional<formula::RuleSet> rules_for(Family id_family)
{
    switch (id_family)
    {
    case Family::sok:
        return formula::RuleSet::sok;
    case Family::sk:
        return formula::RuleSet::sk;
    case Family::dh:
        break;
    }
    return std::nullopt;
}

}  // namespace idka::protocol
