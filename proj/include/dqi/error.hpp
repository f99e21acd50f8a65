#pragma once

#include <stdexcept>
#include <string>

namespace dqi {

// Operands live in different ambient spaces, or series have different orders.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Wrong number of arguments, wrong multivector degree, index out of range.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A documented precondition of an algorithm does not hold (non-Poisson
// bivector, uncertified star product, nonvanishing lower terms, ...).
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A built-in post-condition check failed; indicates a defect, not bad input.
class CheckFailure : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Text input could not be parsed. `where` names the field or offset.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string where, const std::string &what)
        : std::runtime_error(where + ": " + what), where_(std::move(where))
    {
    }

    const std::string &where() const noexcept { return where_; }

private:
    std::string where_;
};

} // namespace dqi
