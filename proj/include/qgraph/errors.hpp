#pragma once

#include <stdexcept>
#include <string>

namespace qgraph {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct NotSquare : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct BadShape : Error { using Error::Error; };
struct NotUnit : Error { using Error::Error; };
struct Overflow : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct NotAColoring : Error { using Error::Error; };
struct Inconsistent : Error { using Error::Error; };
struct BadParams : Error { using Error::Error; };
struct UnknownSystem : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

} // namespace qgraph
