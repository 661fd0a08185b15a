#pragma once

#include <stdexcept>
#include <string>

namespace bpb {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegeneratePolytope : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct InvalidFace : Error {
    using Error::Error;
};
struct ZeroVector : Error {
    using Error::Error;
};
struct UnknownSpace : Error {
    using Error::Error;
};
struct BadParameter : Error {
    using Error::Error;
};
struct UnsupportedSpace : Error {
    using Error::Error;
};
struct OutOfDomain : Error {
    using Error::Error;
};
struct BudgetTooSmall : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

}  // namespace bpb
