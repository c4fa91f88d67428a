#pragma once

#include <stdexcept>
#include <string>

namespace euclid {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// level < current level, or level arithmetic inconsistent
struct LevelError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct BudgetError : Error {
    using Error::Error;
};

struct UndefinedPointError : Error {
    using Error::Error;
};

struct IndexError : Error {
    using Error::Error;
};

struct ParameterError : Error {
    using Error::Error;
};

struct InfeasibleError : Error {
    using Error::Error;
};

} // namespace euclid
