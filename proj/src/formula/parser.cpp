// SPDX-License-Identifier: Apache-2.0
#include "idka/errors.hpp"
#include "idka/formula/expr.hpp"

#include <cctype>

namespace idka::formula
{

namespace
{
// Grammar:
//   formula := expr ('||' expr)*
//   expr    := term ('+' term)*
//   term    := factor ('*' factor)*
//   factor  := primary ('^' primary)?
//   primary := NUMBER | ATOM | 'inv' '(' expr ')' | 'e' '(' expr ',' expr ')' | '(' expr ')'
class Parser
{
public:
    Parser(std::string_view text, ParseOptions options) : text_{text}, options_{options} {}

    SecretFormula formula()
    {
        SecretFormula f;
        f.components.push_back(expr());
        while (accept("||"))
            f.components.push_back(expr());
        skip_space();
        if (pos_ != text_.size())
            syntax("unexpected input");
        return f;
    }

    Expr single()
    {
        auto e = expr();
        skip_space();
        if (pos_ != text_.size())
            syntax("unexpected input");
        return e;
    }

private:
    [[noreturn]] void syntax(const std::string& msg) const
    {
        throw FormulaError(FormulaError::Kind::syntax, pos_, msg + " at offset " + std::to_string(pos_));
    }

    [[noreturn]] static void type_error(std::size_t at, const std::string& msg)
    {
        throw FormulaError(FormulaError::Kind::type, at, msg + " at offset " + std::to_string(at));
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(std::string_view tok)
    {
        skip_space();
        if (text_.substr(pos_, tok.size()) == tok)
        {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view tok)
    {
        if (!accept(tok))
            syntax("expected '" + std::string{tok} + "'");
    }

    Expr expr()
    {
        skip_space();
        const auto start = pos_;
        std::vector<Expr> terms{term()};
        while (accept("+"))
            terms.push_back(term());
        if (terms.size() == 1)
            return terms.front();

        const Sort sort = terms.front()->sort;
        for (const auto& t : terms)
            if (t->sort != sort)
                type_error(start, "cannot add a scalar to a group element");
        if (sort == Sort::target)
            type_error(start, "target-group elements combine with '*', not '+'");
        return sort == Sort::scalar ? add(std::move(terms)) : elem_add(std::move(terms));
    }

    Expr term()
    {
        skip_space();
        const auto start = pos_;
        std::vector<Expr> factors{factor()};
        while (peek_star())
            factors.push_back(factor());
        if (factors.size() == 1)
            return factors.front();

        std::vector<Expr> scalars;
        std::vector<Expr> elements;
        std::vector<Expr> targets;
        for (auto& f : factors)
        {
            switch (f->sort)
            {
            case Sort::scalar:
                scalars.push_back(std::move(f));
                break;
            case Sort::element:
                elements.push_back(std::move(f));
                break;
            case Sort::target:
                targets.push_back(std::move(f));
                break;
            }
        }
        if (!targets.empty())
        {
            if (!scalars.empty() || !elements.empty())
                type_error(start, "target-group elements only multiply each other (use '^' for exponents)");
            return t_mul(std::move(targets));
        }
        if (elements.size() > 1)
            type_error(start, "product of two group elements");
        if (elements.empty())
            return mul(std::move(scalars));
        return scalar_mul(mul(std::move(scalars)), std::move(elements.front()));
    }

    bool peek_star()
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '*')
        {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr factor()
    {
        skip_space();
        const auto start = pos_;
        auto base = primary();
        if (!accept("^"))
            return base;
        skip_space();
        const auto exp_at = pos_;
        auto k = primary();
        if (base->sort != Sort::target)
            type_error(start, "only target-group elements can be raised to a power");
        if (k->sort != Sort::scalar)
            type_error(exp_at, "exponent must be a scalar");
        return t_exp(std::move(base), std::move(k));
    }

    Expr primary()
    {
        skip_space();
        if (pos_ >= text_.size())
            syntax("unexpected end of formula");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)))
        {
            const auto start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            const auto digits = text_.substr(start, pos_ - start);
            if (digits.size() > 9)
            {
                pos_ = start;
                syntax("literal too large");
            }
            return literal(std::stoul(std::string{digits}));
        }
        if (c == '(')
        {
            ++pos_;
            auto e = expr();
            expect(")");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
        {
            const auto start = pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name{text_.substr(start, pos_ - start)};
            skip_space();
            const bool call = pos_ < text_.size() && text_[pos_] == '(';
            if (name == "e" && call)
                return pairing_call();
            if (name == "inv" && call)
            {
                ++pos_;
                skip_space();
                const auto arg_at = pos_;
                auto x = expr();
                expect(")");
                if (x->sort != Sort::scalar)
                    type_error(arg_at, "inv() takes a scalar");
                return inv(std::move(x));
            }
            if (name == "P0")
                name = "P_0";
            if (is_scalar_atom(name))
                return atom(std::move(name), Sort::scalar);
            if (is_element_atom(name))
            {
                const bool msg = name == "T_A" || name == "T_B";
                return atom(std::move(name), msg && options_.target_messages ? Sort::target : Sort::element);
            }
            pos_ = start;
            syntax("unknown atom '" + name + "'");
        }
        syntax(std::string{"unexpected character '"} + c + "'");
    }

    Expr pairing_call()
    {
        expect("(");
        skip_space();
        const auto l_at = pos_;
        auto l = expr();
        expect(",");
        skip_space();
        const auto r_at = pos_;
        auto r = expr();
        expect(")");
        if (l->sort != Sort::element)
            type_error(l_at, "pairing argument must be a group element");
        if (r->sort != Sort::element)
            type_error(r_at, "pairing argument must be a group element");
        return pair(std::move(l), std::move(r));
    }

    std::string_view text_;
    ParseOptions options_;
    std::size_t pos_ = 0;
};
}  // namespace

SecretFormula parse(std::string_view text, ParseOptions options)
{
    return Parser{text, options}.formula();
}

Expr parse_expr(std::string_view text, ParseOptions options)
{
    return Parser{text, options}.single();
}

}  // namespace idka::formula
