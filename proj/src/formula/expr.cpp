// SPDX-License-Identifier: Apache-2.0
#include "idka/formula/expr.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

namespace idka::formula
{

namespace
{
constexpr std::array scalar_atoms{"a", "b", "x", "y", "s", "h_A", "h_B", "u_A", "u_B"};
constexpr std::array element_atoms{"P", "P_0", "Q_A", "Q_B", "T_A", "T_B", "F_AB", "S_A", "S_B", "Q", "Q_1", "Q_2"};

Expr make(Op op, Sort sort, std::vector<Expr> args)
{
    return std::make_shared<const Node>(Node{op, sort, {}, 0, std::move(args)});
}

Expr make_nary(Op op, Sort sort, std::vector<Expr> args)
{
    if (args.empty())
        throw std::invalid_argument("n-ary node needs at least one argument");
    if (args.size() == 1)
        return std::move(args.front());
    std::vector<Expr> flat;
    for (auto& a : args)
    {
        if (a->op == op)
            flat.insert(flat.end(), a->args.begin(), a->args.end());
        else
            flat.push_back(std::move(a));
    }
    return make(op, sort, std::move(flat));
}

void require(const Expr& e, Sort sort, const char* what)
{
    if (e->sort != sort)
        throw std::invalid_argument(std::string{"ill-sorted argument to "} + what);
}

std::string swap_name(const std::string& n)
{
    if (n == "a")
        return "b";
    if (n == "b")
        return "a";
    if (n == "x")
        return "y";
    if (n == "y")
        return "x";
    if (n.size() > 2 && n.ends_with("_A"))
        return n.substr(0, n.size() - 1) + "B";
    if (n.size() > 2 && n.ends_with("_B"))
        return n.substr(0, n.size() - 1) + "A";
    return n;
}

// Rendering precedence: sums bind loosest, then products, then ^.
bool is_sum(const Expr& e)
{
    return e->op == Op::add || e->op == Op::elem_add;
}

std::string join(const std::vector<Expr>& args, const char* sep);

std::string paren_if(bool cond, const Expr& e)
{
    return cond ? "(" + render(e) + ")" : render(e);
}

std::string join(const std::vector<Expr>& args, const char* sep)
{
    std::string out;
    for (std::size_t i = 0; i < args.size(); ++i)
    {
        if (i)
            out += sep;
        // a sum nested in a product needs parentheses; sums never nest in sums (flattened)
        out += paren_if(std::string_view{sep} == "*" && is_sum(args[i]), args[i]);
    }
    return out;
}
}  // namespace

bool is_scalar_atom(std::string_view name)
{
    return std::find(scalar_atoms.begin(), scalar_atoms.end(), name) != scalar_atoms.end();
}

bool is_element_atom(std::string_view name)
{
    return std::find(element_atoms.begin(), element_atoms.end(), name) != element_atoms.end();
}

bool equal(const Expr& a, const Expr& b)
{
    if (a == b)
        return true;
    if (a->op != b->op || a->sort != b->sort || a->name != b->name || a->value != b->value ||
        a->args.size() != b->args.size())
        return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!equal(a->args[i], b->args[i]))
            return false;
    return true;
}

bool operator==(const SecretFormula& a, const SecretFormula& b)
{
    return a.components.size() == b.components.size() &&
           std::equal(a.components.begin(), a.components.end(), b.components.begin(),
               [](const Expr& x, const Expr& y) { return equal(x, y); });
}

Expr atom(std::string name, Sort sort)
{
    return std::make_shared<const Node>(Node{Op::atom, sort, std::move(name), 0, {}});
}

Expr literal(unsigned long v)
{
    return std::make_shared<const Node>(Node{Op::literal, Sort::scalar, {}, v, {}});
}

Expr add(std::vector<Expr> terms)
{
    for (const auto& t : terms)
        require(t, Sort::scalar, "add");
    return make_nary(Op::add, Sort::scalar, std::move(terms));
}

Expr mul(std::vector<Expr> factors)
{
    for (const auto& f : factors)
        require(f, Sort::scalar, "mul");
    return make_nary(Op::mul, Sort::scalar, std::move(factors));
}

Expr inv(Expr x)
{
    require(x, Sort::scalar, "inv");
    return make(Op::inv, Sort::scalar, {std::move(x)});
}

Expr elem_add(std::vector<Expr> terms)
{
    for (const auto& t : terms)
        require(t, Sort::element, "elem_add");
    return make_nary(Op::elem_add, Sort::element, std::move(terms));
}

Expr scalar_mul(Expr k, Expr e)
{
    require(k, Sort::scalar, "scalar_mul");
    require(e, Sort::element, "scalar_mul");
    return make(Op::scalar_mul, Sort::element, {std::move(k), std::move(e)});
}

Expr pair(Expr l, Expr r)
{
    require(l, Sort::element, "pair");
    require(r, Sort::element, "pair");
    return make(Op::pair, Sort::target, {std::move(l), std::move(r)});
}

Expr t_mul(std::vector<Expr> factors)
{
    for (const auto& f : factors)
        require(f, Sort::target, "t_mul");
    return make_nary(Op::t_mul, Sort::target, std::move(factors));
}

Expr t_exp(Expr base, Expr k)
{
    require(base, Sort::target, "t_exp");
    require(k, Sort::scalar, "t_exp");
    return make(Op::t_exp, Sort::target, {std::move(base), std::move(k)});
}

std::string render(const Expr& e)
{
    switch (e->op)
    {
    case Op::atom:
        return e->name;
    case Op::literal:
        return std::to_string(e->value);
    case Op::add:
    case Op::elem_add:
        return join(e->args, " + ");
    case Op::mul:
    case Op::t_mul:
        return join(e->args, "*");
    case Op::inv:
        return "inv(" + render(e->args[0]) + ")";
    case Op::scalar_mul: {
        const auto& k = e->args[0];
        const auto& p = e->args[1];
        // a nested scalar_mul keeps its parentheses so the tree shape survives a round trip
        return paren_if(k->op == Op::add, k) + "*" + paren_if(p->op == Op::elem_add || p->op == Op::scalar_mul, p);
    }
    case Op::pair:
        return "e(" + render(e->args[0]) + ", " + render(e->args[1]) + ")";
    case Op::t_exp: {
        const auto& base = e->args[0];
        const auto& k = e->args[1];
        const bool simple_exp = k->op == Op::atom || k->op == Op::literal;
        return paren_if(base->op == Op::t_mul || base->op == Op::t_exp, base) + "^" + paren_if(!simple_exp, k);
    }
    }
    return "?";
}

std::string render(const SecretFormula& f)
{
    std::string out;
    for (std::size_t i = 0; i < f.components.size(); ++i)
    {
        if (i)
            out += " || ";
        out += render(f.components[i]);
    }
    return out;
}

Expr rename_atom(const Expr& e, std::string_view from, std::string_view to)
{
    if (e->op == Op::atom)
        return e->name == from ? atom(std::string{to}, e->sort) : e;
    if (e->args.empty())
        return e;
    std::vector<Expr> args;
    args.reserve(e->args.size());
    for (const auto& a : e->args)
        args.push_back(rename_atom(a, from, to));
    return std::make_shared<const Node>(Node{e->op, e->sort, e->name, e->value, std::move(args)});
}

Expr swap_roles(const Expr& e)
{
    if (e->op == Op::atom)
        return atom(swap_name(e->name), e->sort);
    if (e->args.empty())
        return e;
    std::vector<Expr> args;
    args.reserve(e->args.size());
    for (const auto& a : e->args)
        args.push_back(swap_roles(a));
    return std::make_shared<const Node>(Node{e->op, e->sort, e->name, e->value, std::move(args)});
}

SecretFormula swap_roles(const SecretFormula& f)
{
    SecretFormula out;
    for (const auto& c : f.components)
        out.components.push_back(swap_roles(c));
    return out;
}

std::vector<std::string> atoms_of(const Expr& e)
{
    std::set<std::string> seen;
    std::vector<const Node*> stack{e.get()};
    while (!stack.empty())
    {
        const Node* n = stack.back();
        stack.pop_back();
        if (n->op == Op::atom)
            seen.insert(n->name);
        for (const auto& a : n->args)
            stack.push_back(a.get());
    }
    return {seen.begin(), seen.end()};
}

}  // namespace idka::formula
