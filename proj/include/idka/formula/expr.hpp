// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace idka::formula
{

/// What an expression denotes: an integer mod q, a point of G1, or a target-group element.
enum class Sort
{
    scalar,
    element,
    target,
};

enum class Op
{
    atom,
    literal,
    add,         ///< scalar + scalar + ...
    mul,         ///< scalar * scalar * ...
    inv,         ///< scalar inverse mod q
    elem_add,    ///< element + element + ...
    scalar_mul,  ///< args: scalar, element
    pair,        ///< args: element, element
    t_mul,       ///< target * target * ...
    t_exp,       ///< args: target, scalar
};

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node
{
    Op op;
    Sort sort;
    std::string name;        ///< atom name
    unsigned long value = 0; ///< literal value
    std::vector<Expr> args;
};

bool equal(const Expr& a, const Expr& b);

Expr atom(std::string name, Sort sort);
Expr literal(unsigned long v);
/// n-ary constructors flatten nested nodes of the same op; a single argument is returned as is.
Expr add(std::vector<Expr> terms);
Expr mul(std::vector<Expr> factors);
Expr inv(Expr x);
Expr elem_add(std::vector<Expr> terms);
Expr scalar_mul(Expr k, Expr e);
Expr pair(Expr l, Expr r);
Expr t_mul(std::vector<Expr> factors);
Expr t_exp(Expr base, Expr k);

/// A session secret: one or more components, concatenated in order into the KDF
/// (written "K1 || K2").
struct SecretFormula
{
    std::vector<Expr> components;

    friend bool operator==(const SecretFormula& a, const SecretFormula& b);
};

struct ParseOptions
{
    /// Treat T_A / T_B as target-group atoms (protocols whose messages are pairing values).
    bool target_messages = false;
};

/// Throws FormulaError (syntax or type) with a byte offset.
SecretFormula parse(std::string_view text, ParseOptions options = {});
Expr parse_expr(std::string_view text, ParseOptions options = {});

std::string render(const Expr& e);
std::string render(const SecretFormula& f);

/// Exchanges the roles of the two parties: a<->b, x<->y, and every _A<->_B atom.
Expr swap_roles(const Expr& e);
SecretFormula swap_roles(const SecretFormula& f);

/// Replaces every atom named `from` by `to` (same sort).
Expr rename_atom(const Expr& e, std::string_view from, std::string_view to);

/// Names of all atoms appearing in the expression.
std::vector<std::string> atoms_of(const Expr& e);

bool is_scalar_atom(std::string_view name);
bool is_element_atom(std::string_view name);

}  // namespace idka::formula
