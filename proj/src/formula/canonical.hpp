// SPDX-License-Identifier: Apache-2.0
#pragma once

// Canonical (fully expanded) forms of formulas. Scalars become Laurent
// polynomials over the scalar atoms, elements become linear combinations of
// element atoms, and target expressions become symmetric bilinear forms over
// element atoms (plus powers of target atoms). Two formulas are structurally
// equivalent iff their canonical forms coincide.

#include "idka/formula/expr.hpp"

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>

namespace idka::formula::canon
{

/// A scalar atom or an opaque inverse inv(<poly>) that could not be split.
struct Key
{
    std::string name;
    Expr inverse_of;  ///< set for opaque inverses; name is then its rendering

    friend bool operator==(const Key& a, const Key& b) { return a.name == b.name; }
};

struct KeyLess
{
    bool operator()(const Key& a, const Key& b) const;
};

using Monomial = std::map<Key, int, KeyLess>;

struct MonomialLess
{
    bool operator()(const Monomial& a, const Monomial& b) const;
};

using Poly = std::map<Monomial, mpz_class, MonomialLess>;

struct ElemLess
{
    bool operator()(const std::string& a, const std::string& b) const;
};

using Linear = std::map<std::string, Poly, ElemLess>;

struct Bilinear
{
    /// Keys are oriented (left, right) by pairing_orientation().
    std::map<std::pair<std::string, std::string>, Poly> pairs;
    std::map<std::string, Poly> target_atoms;
};

using Form = std::variant<Poly, Linear, Bilinear>;

Form canonicalize(const Expr& e);

bool same(const Poly& a, const Poly& b);
bool same(const Linear& a, const Linear& b);
bool same(const Bilinear& a, const Bilinear& b);
bool same(const Form& a, const Form& b);

Poly constant(long v);
Poly constant_poly_of(const mpz_class& c);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly monomial_poly(const Monomial& m, const mpz_class& coeff);

/// Exact quotient n / d, or nullopt when d does not divide n.
std::optional<Poly> divide(const Poly& n, const Poly& d);

Linear linear_scale(const Linear& l, const Poly& k);
void add_pairing(Bilinear& out, const Linear& l, const Linear& r);

/// Orders the two arguments of a (symmetric) pairing canonically.
std::pair<std::string, std::string> pairing_orientation(const std::string& a, const std::string& b);

Expr to_expr(const Poly& p);
Expr to_expr(const Linear& l);
Expr to_expr(const Bilinear& b);
Expr to_expr(const Form& f);

}  // namespace idka::formula::canon
