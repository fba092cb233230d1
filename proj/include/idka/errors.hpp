// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace idka
{

/// Base of every error thrown by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Input element is not on the curve, not in the order-q subgroup, or otherwise unusable.
class ValidationError : public Error
{
public:
    using Error::Error;
};

/// Parameter search gave up, or a parameter file violates the invariants.
class ParamError : public Error
{
public:
    using Error::Error;
};

/// Missing key material, mismatched settings, phase violations.
class ConfigError : public Error
{
public:
    using Error::Error;
};

class DecodeError : public Error
{
public:
    enum class Kind
    {
        length,
        format,
        off_curve,
        subgroup,
        range,
    };

    DecodeError(Kind kind, const std::string& what) : Error(what), kind_{kind} {}

    [[nodiscard]] Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

class FormulaError : public Error
{
public:
    enum class Kind
    {
        syntax,
        type,
        untranslatable,
    };

    FormulaError(Kind kind, std::size_t position, const std::string& what)
      : Error(what), kind_{kind}, position_{position}
    {}

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    /// Byte offset into the parsed text; 0 when not produced by the parser.
    [[nodiscard]] std::size_t position() const noexcept { return position_; }

private:
    Kind kind_;
    std::size_t position_;
};

/// SK extraction hit s + u = 0 (mod q).
class ExtractionError : public Error
{
public:
    using Error::Error;
};

/// Two roles of an honest run disagreed.
class AgreementError : public Error
{
public:
    using Error::Error;
};

}  // namespace idka
