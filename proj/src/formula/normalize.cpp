// SPDX-License-Identifier: Apache-2.0
#include "idka/formula/normalize.hpp"

#include "canonical.hpp"

namespace idka::formula
{

Expr normalize(const Expr& e)
{
    return canon::to_expr(canon::canonicalize(e));
}

SecretFormula normalize(const SecretFormula& f)
{
    SecretFormula out;
    for (const auto& c : f.components)
        out.components.push_back(normalize(c));
    return out;
}

bool structural_equiv(const Expr& f, const Expr& g)
{
    return equal(normalize(f), normalize(g));
}

bool structural_equiv(const SecretFormula& f, const SecretFormula& g)
{
    return normalize(f) == normalize(g);
}

}  // namespace idka::formula
