#ifndef LRC_ERRORS_HPP
#define LRC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lrc {

// Base class for all library errors. CLI maps subtypes to exit codes.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidParams : Error {
    using Error::Error;
};
struct NotNuOptimal : Error {
    using Error::Error;
};
struct ZeroInverse : Error {
    using Error::Error;
};
struct Singular : Error {
    using Error::Error;
};
struct ShapeMismatch : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct ConstructionFailure : Error {
    using Error::Error;
};
struct RealizationFailure : Error {
    using Error::Error;
};
struct BudgetExceeded : Error {
    using Error::Error;
};
struct Undecodable : Error {
    using Error::Error;
};
struct ReplayError : Error {
    using Error::Error;
};
struct ModeMismatch : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

}  // namespace lrc

#endif
