// SPDX-License-Identifier: Apache-2.0
#include "canonical.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace idka::formula::canon
{

namespace
{
constexpr std::array scalar_order{"x", "y", "h_A", "h_B", "a", "b", "s", "u_A", "u_B"};
// order of terms inside a rendered sum
constexpr std::array sum_order{"P", "P_0", "T_A", "T_B", "Q_A", "Q_B", "Q", "Q_1", "Q_2", "F_AB", "S_A", "S_B"};
// preference for the left argument of a pairing
constexpr std::array left_order{"S_A", "S_B", "P_0", "P", "T_A", "Q_A", "T_B", "Q_B", "Q", "Q_1", "Q_2", "F_AB"};

template <std::size_t N>
std::size_t rank_in(const std::array<const char*, N>& order, std::string_view name)
{
    for (std::size_t i = 0; i < N; ++i)
        if (name == order[i])
            return i;
    return N;
}

void prune(Poly& p)
{
    std::erase_if(p, [](const auto& kv) { return kv.second == 0; });
}

Monomial monomial_mul(const Monomial& a, const Monomial& b)
{
    Monomial r = a;
    for (const auto& [k, e] : b)
    {
        auto& slot = r[k];
        slot += e;
        if (slot == 0)
            r.erase(k);
    }
    return r;
}

// Lexicographic monomial order in KeyLess order of atoms; compatible with multiplication.
int lex_cmp(const Monomial& a, const Monomial& b)
{
    auto ia = a.begin();
    auto ib = b.begin();
    const KeyLess less;
    while (ia != a.end() || ib != b.end())
    {
        if (ib == b.end() || (ia != a.end() && less(ia->first, ib->first)))
        {
            // key present only in a
            return ia->second > 0 ? 1 : -1;
        }
        if (ia == a.end() || less(ib->first, ia->first))
            return ib->second > 0 ? -1 : 1;
        if (ia->second != ib->second)
            return ia->second > ib->second ? 1 : -1;
        ++ia;
        ++ib;
    }
    return 0;
}

const std::pair<const Monomial, mpz_class>& leading(const Poly& p)
{
    auto best = p.begin();
    for (auto it = std::next(p.begin()); it != p.end(); ++it)
        if (lex_cmp(it->first, best->first) > 0)
            best = it;
    return *best;
}

bool is_one(const Poly& p)
{
    return p.size() == 1 && p.begin()->first.empty() && p.begin()->second == 1;
}

int degree(const Monomial& m)
{
    int d = 0;
    for (const auto& [k, e] : m)
        d += std::abs(e);
    return d;
}

// Display order of monomials in a sum: by degree, constants last, then lexicographic.
bool display_less(const Monomial& a, const Monomial& b)
{
    const bool ca = a.empty();
    const bool cb = b.empty();
    if (ca != cb)
        return cb;
    const int da = degree(a);
    const int db = degree(b);
    if (da != db)
        return da < db;
    return MonomialLess{}(a, b);
}

Expr key_expr(const Key& k)
{
    if (k.inverse_of)
        return inv(k.inverse_of);
    return atom(k.name, Sort::scalar);
}

Expr key_inverse_expr(const Key& k)
{
    if (k.inverse_of)
        return k.inverse_of;
    return inv(atom(k.name, Sort::scalar));
}

Expr literal_of(const mpz_class& c)
{
    if (c < 0 || !c.fits_ulong_p())
        throw std::logic_error("canonical coefficient out of range");
    return literal(c.get_ui());
}

Key opaque_inverse(const Poly& p)
{
    auto inner = to_expr(p);
    return Key{"inv(" + render(inner) + ")", inner};
}

Poly poly_inverse(const Poly& p)
{
    if (p.size() == 1)
    {
        const auto& [m, c] = *p.begin();
        if (c == 1 && m.size() == 1 && m.begin()->first.inverse_of && m.begin()->second == 1)
        {
            // inv(inv(E)) = E
            return std::get<Poly>(canonicalize(m.begin()->first.inverse_of));
        }
        Monomial r;
        for (const auto& [k, e] : m)
            r[k] = -e;
        if (c != 1)
            r[opaque_inverse(constant_poly_of(c))] += 1;
        return monomial_poly(r, 1);
    }
    Monomial m;
    m[opaque_inverse(p)] = 1;
    return monomial_poly(m, 1);
}

std::size_t scalar_atom_count(const Expr& e)
{
    std::size_t n = 0;
    for (const auto& name : atoms_of(e))
        if (is_scalar_atom(name))
            ++n;
    return n;
}

Linear to_linear_or_throw(const Form& f)
{
    if (const auto* l = std::get_if<Linear>(&f))
        return *l;
    throw std::logic_error("expected an element form");
}
}  // namespace

Poly constant_poly_of(const mpz_class& c)
{
    Poly p;
    if (c != 0)
        p[Monomial{}] = c;
    return p;
}

bool KeyLess::operator()(const Key& a, const Key& b) const
{
    const auto ra = rank_in(scalar_order, a.name);
    const auto rb = rank_in(scalar_order, b.name);
    if (ra != rb)
        return ra < rb;
    return a.name < b.name;
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const auto& x, const auto& y) {
        const KeyLess less;
        if (less(x.first, y.first))
            return true;
        if (less(y.first, x.first))
            return false;
        return x.second < y.second;
    });
}

bool ElemLess::operator()(const std::string& a, const std::string& b) const
{
    const auto ra = rank_in(sum_order, a);
    const auto rb = rank_in(sum_order, b);
    if (ra != rb)
        return ra < rb;
    return a < b;
}

std::pair<std::string, std::string> pairing_orientation(const std::string& a, const std::string& b)
{
    const auto ra = rank_in(left_order, a);
    const auto rb = rank_in(left_order, b);
    if (ra < rb || (ra == rb && a <= b))
        return {a, b};
    return {b, a};
}

Poly constant(long v)
{
    return constant_poly_of(mpz_class{v});
}

Poly monomial_poly(const Monomial& m, const mpz_class& coeff)
{
    Poly p;
    if (coeff != 0)
        p[m] = coeff;
    return p;
}

Poly poly_add(const Poly& a, const Poly& b)
{
    Poly r = a;
    for (const auto& [m, c] : b)
        r[m] += c;
    prune(r);
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b)
{
    Poly r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b)
            r[monomial_mul(ma, mb)] += ca * cb;
    prune(r);
    return r;
}

std::optional<Poly> divide(const Poly& n, const Poly& d)
{
    if (d.empty())
        return std::nullopt;
    if (n.empty())
        return Poly{};

    // Clear negative exponents from both so ordinary polynomial division applies.
    Monomial shift;
    for (const auto* p : {&n, &d})
        for (const auto& [m, c] : *p)
            for (const auto& [k, e] : m)
                if (e < 0)
                    shift[k] = std::max(shift[k], -e);
    const Poly nn = poly_mul(n, monomial_poly(shift, 1));
    const Poly dd = poly_mul(d, monomial_poly(shift, 1));

    const auto& [dm, dc] = leading(dd);
    Poly quotient;
    Poly rem = nn;
    for (int guard = 0; !rem.empty(); ++guard)
    {
        if (guard > 10000)
            return std::nullopt;
        const auto [rm, rc] = leading(rem);
        Monomial t;
        for (const auto& [k, e] : rm)
            t[k] = e;
        for (const auto& [k, e] : dm)
        {
            auto& slot = t[k];
            slot -= e;
            if (slot < 0)
                return std::nullopt;
            if (slot == 0)
                t.erase(k);
        }
        if (rc % dc != 0)
            return std::nullopt;
        const Poly term = monomial_poly(t, rc / dc);
        quotient = poly_add(quotient, term);
        Poly neg = poly_mul(term, dd);
        for (auto& [m, c] : neg)
            c = -c;
        rem = poly_add(rem, neg);
    }
    return quotient;
}

Linear linear_scale(const Linear& l, const Poly& k)
{
    Linear r;
    for (const auto& [name, c] : l)
    {
        auto p = poly_mul(c, k);
        if (!p.empty())
            r[name] = std::move(p);
    }
    return r;
}

void add_pairing(Bilinear& out, const Linear& l, const Linear& r)
{
    for (const auto& [el, cl] : l)
        for (const auto& [er, cr] : r)
        {
            auto key = pairing_orientation(el, er);
            auto& slot = out.pairs[key];
            slot = poly_add(slot, poly_mul(cl, cr));
            if (slot.empty())
                out.pairs.erase(key);
        }
}

Form canonicalize(const Expr& e)
{
    switch (e->op)
    {
    case Op::atom:
        switch (e->sort)
        {
        case Sort::scalar: {
            Monomial m;
            m[Key{e->name, nullptr}] = 1;
            return monomial_poly(m, 1);
        }
        case Sort::element:
            return Linear{{e->name, constant(1)}};
        case Sort::target: {
            Bilinear b;
            b.target_atoms[e->name] = constant(1);
            return b;
        }
        }
        break;
    case Op::literal:
        return constant_poly_of(mpz_class{e->value});
    case Op::add: {
        Poly r;
        for (const auto& a : e->args)
            r = poly_add(r, std::get<Poly>(canonicalize(a)));
        return r;
    }
    case Op::mul: {
        Poly r = constant(1);
        for (const auto& a : e->args)
            r = poly_mul(r, std::get<Poly>(canonicalize(a)));
        return r;
    }
    case Op::inv:
        return poly_inverse(std::get<Poly>(canonicalize(e->args[0])));
    case Op::elem_add: {
        Linear r;
        for (const auto& a : e->args)
            for (auto& [name, c] : to_linear_or_throw(canonicalize(a)))
            {
                auto& slot = r[name];
                slot = poly_add(slot, c);
                if (slot.empty())
                    r.erase(name);
            }
        return r;
    }
    case Op::scalar_mul:
        return linear_scale(to_linear_or_throw(canonicalize(e->args[1])), std::get<Poly>(canonicalize(e->args[0])));
    case Op::pair: {
        Bilinear b;
        add_pairing(b, to_linear_or_throw(canonicalize(e->args[0])), to_linear_or_throw(canonicalize(e->args[1])));
        return b;
    }
    case Op::t_mul: {
        Bilinear r;
        for (const auto& a : e->args)
        {
            const auto b = std::get<Bilinear>(canonicalize(a));
            for (const auto& [k, c] : b.pairs)
            {
                auto& slot = r.pairs[k];
                slot = poly_add(slot, c);
                if (slot.empty())
                    r.pairs.erase(k);
            }
            for (const auto& [k, c] : b.target_atoms)
            {
                auto& slot = r.target_atoms[k];
                slot = poly_add(slot, c);
                if (slot.empty())
                    r.target_atoms.erase(k);
            }
        }
        return r;
    }
    case Op::t_exp: {
        auto b = std::get<Bilinear>(canonicalize(e->args[0]));
        const auto k = std::get<Poly>(canonicalize(e->args[1]));
        Bilinear r;
        for (const auto& [key, c] : b.pairs)
            if (auto p = poly_mul(c, k); !p.empty())
                r.pairs[key] = std::move(p);
        for (const auto& [key, c] : b.target_atoms)
            if (auto p = poly_mul(c, k); !p.empty())
                r.target_atoms[key] = std::move(p);
        return r;
    }
    }
    throw std::logic_error("unknown formula node");
}

bool same(const Poly& a, const Poly& b)
{
    if (a.size() != b.size())
        return false;
    for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
        if (lex_cmp(ia->first, ib->first) != 0 || ia->second != ib->second)
            return false;
    return true;
}

bool same(const Linear& a, const Linear& b)
{
    if (a.size() != b.size())
        return false;
    for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
        if (ia->first != ib->first || !same(ia->second, ib->second))
            return false;
    return true;
}

bool same(const Bilinear& a, const Bilinear& b)
{
    if (a.pairs.size() != b.pairs.size() || a.target_atoms.size() != b.target_atoms.size())
        return false;
    for (auto ia = a.pairs.begin(), ib = b.pairs.begin(); ia != a.pairs.end(); ++ia, ++ib)
        if (ia->first != ib->first || !same(ia->second, ib->second))
            return false;
    for (auto ia = a.target_atoms.begin(), ib = b.target_atoms.begin(); ia != a.target_atoms.end(); ++ia, ++ib)
        if (ia->first != ib->first || !same(ia->second, ib->second))
            return false;
    return true;
}

bool same(const Form& a, const Form& b)
{
    if (a.index() != b.index())
        return false;
    return std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            return same(x, std::get<T>(b));
        },
        a);
}

Expr to_expr(const Poly& p)
{
    if (p.empty())
        return literal(0);
    std::vector<const std::pair<const Monomial, mpz_class>*> terms;
    for (const auto& kv : p)
        terms.push_back(&kv);
    std::sort(terms.begin(), terms.end(), [](auto* x, auto* y) { return display_less(x->first, y->first); });

    std::vector<Expr> sum;
    for (const auto* t : terms)
    {
        std::vector<Expr> factors;
        if (t->second != 1 || t->first.empty())
            factors.push_back(literal_of(t->second));
        for (const auto& [k, e] : t->first)
            for (int i = 0; i < std::abs(e); ++i)
                factors.push_back(e > 0 ? key_expr(k) : key_inverse_expr(k));
        sum.push_back(mul(std::move(factors)));
    }
    return add(std::move(sum));
}

namespace
{
Expr linear_term(const std::string& name, const Poly& c)
{
    auto a = atom(name, Sort::element);
    return is_one(c) ? a : scalar_mul(to_expr(c), a);
}

// Splits a row into (content, primitive part) when the first coefficient divides all others.
std::pair<Poly, Linear> split_content(const Linear& row)
{
    if (row.size() >= 2)
    {
        const Poly& first = row.begin()->second;
        if (!is_one(first))
        {
            Linear prim;
            bool ok = true;
            for (const auto& [name, c] : row)
            {
                auto qt = divide(c, first);
                if (!qt)
                {
                    ok = false;
                    break;
                }
                prim[name] = std::move(*qt);
            }
            if (ok)
                return {first, std::move(prim)};
        }
    }
    return {constant(1), row};
}
}  // namespace

Expr to_expr(const Linear& l)
{
    if (l.empty())
        return scalar_mul(literal(0), atom("P", Sort::element));
    auto [content, prim] = split_content(l);
    std::vector<Expr> terms;
    for (const auto& [name, c] : prim)
        terms.push_back(linear_term(name, c));
    auto sum = elem_add(std::move(terms));
    return is_one(content) ? sum : scalar_mul(to_expr(content), sum);
}

Expr to_expr(const Bilinear& b)
{
    std::map<std::string, Linear> rows;
    for (const auto& [key, c] : b.pairs)
        rows[key.first][key.second] = c;

    struct Group
    {
        Linear left;
        Linear right;
        Linear original;  // the row itself, kept for single-row single-entry groups
    };

    // rows with proportional coefficients merge into one pairing with a combined left argument
    std::vector<Group> groups;
    for (const auto& [left, row] : rows)
    {
        auto [content, prim] = row.size() == 1 ? std::pair{row.begin()->second, Linear{{row.begin()->first, constant(1)}}}
                                               : split_content(row);
        auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return same(g.right, prim); });
        if (it == groups.end())
            groups.push_back({Linear{{left, content}}, std::move(prim), row});
        else
            it->left[left] = content;
    }

    std::vector<Expr> factors;
    for (const auto& g : groups)
    {
        if (g.left.size() == 1 && g.original.size() == 1)
        {
            // a lone term e(E, k*F): the coefficient stays with the right argument
            const auto& left = g.left.begin()->first;
            const auto& [right, coeff] = *g.original.begin();
            if (left == right && !is_one(coeff))
            {
                auto base = pair(atom(left, Sort::element), atom(right, Sort::element));
                factors.push_back(t_exp(base, to_expr(coeff)));
            }
            else
            {
                factors.push_back(pair(atom(left, Sort::element), to_expr(g.original)));
            }
            continue;
        }
        factors.push_back(pair(to_expr(g.left), to_expr(g.right)));
    }
    for (const auto& [name, c] : b.target_atoms)
    {
        auto a = atom(name, Sort::target);
        factors.push_back(is_one(c) ? a : t_exp(a, to_expr(c)));
    }
    if (factors.empty())
        return t_exp(pair(atom("P", Sort::element), atom("P", Sort::element)), literal(0));

    std::vector<std::pair<std::pair<std::size_t, std::string>, Expr>> keyed;
    for (auto& f : factors)
        keyed.push_back({{scalar_atom_count(f), render(f)}, std::move(f)});
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    factors.clear();
    for (auto& [k, f] : keyed)
        factors.push_back(std::move(f));
    return t_mul(std::move(factors));
}

Expr to_expr(const Form& f)
{
    return std::visit([](const auto& x) { return to_expr(x); }, f);
}

}  // namespace idka::formula::canon
