// SPDX-License-Identifier: Apache-2.0
#include "idka/formula/evaluate.hpp"

#include "idka/backend/arith.hpp"
#include "idka/errors.hpp"

namespace idka::formula
{

namespace
{
template <typename T>
const T& as(const Value& v, const char* what)
{
    if (const auto* p = std::get_if<T>(&v))
        return *p;
    throw ConfigError(std::string{"formula value has the wrong kind for "} + what);
}
}  // namespace

Value evaluate(const PairingParams& pp, const Expr& e, const Assignment& env)
{
    switch (e->op)
    {
    case Op::atom: {
        auto it = env.find(e->name);
        if (it == env.end())
            throw ConfigError("formula references unavailable key material: " + e->name);
        return it->second;
    }
    case Op::literal:
        return make_scalar(pp, mpz_class{e->value});
    case Op::add: {
        Scalar r{0};
        for (const auto& a : e->args)
            r = scalar_add(pp, r, as<Scalar>(evaluate(pp, a, env), "add"));
        return r;
    }
    case Op::mul: {
        Scalar r{1};
        for (const auto& a : e->args)
            r = scalar_mul(pp, r, as<Scalar>(evaluate(pp, a, env), "mul"));
        return r;
    }
    case Op::inv:
        return scalar_inv(pp, as<Scalar>(evaluate(pp, e->args[0], env), "inv"));
    case Op::elem_add: {
        G1Point r;
        for (const auto& a : e->args)
            r = detail::add_unchecked(pp.p, r, as<G1Point>(evaluate(pp, a, env), "+"));
        return r;
    }
    case Op::scalar_mul: {
        const auto k = as<Scalar>(evaluate(pp, e->args[0], env), "scalar multiple");
        return detail::mul_unchecked(pp.p, k.value, as<G1Point>(evaluate(pp, e->args[1], env), "scalar multiple"));
    }
    case Op::pair:
        return detail::pairing_unchecked(pp, as<G1Point>(evaluate(pp, e->args[0], env), "pairing"),
            as<G1Point>(evaluate(pp, e->args[1], env), "pairing"));
    case Op::t_mul: {
        GtElement r = gt_one();
        for (const auto& a : e->args)
            r = {detail::fp2_mul(pp.p, r.value, as<GtElement>(evaluate(pp, a, env), "*").value)};
        return r;
    }
    case Op::t_exp: {
        const auto base = as<GtElement>(evaluate(pp, e->args[0], env), "^");
        const auto k = as<Scalar>(evaluate(pp, e->args[1], env), "exponent");
        return GtElement{detail::fp2_pow(pp.p, base.value, k.value)};
    }
    }
    throw ConfigError("unknown formula node");
}

std::vector<Value> evaluate(const PairingParams& pp, const SecretFormula& f, const Assignment& env)
{
    std::vector<Value> out;
    out.reserve(f.components.size());
    for (const auto& c : f.components)
        out.push_back(evaluate(pp, c, env));
    return out;
}

}  // namespace idka::formula
