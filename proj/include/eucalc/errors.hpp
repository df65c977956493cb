#pragma once

#include <stdexcept>
#include <string>

namespace eucalc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionUnsupported : Error { using Error::Error; };
struct AmbientMismatch : Error { using Error::Error; };
struct NotSimple : Error { using Error::Error; };
struct PointOutside : Error { using Error::Error; };
struct NotCompactlySupported : Error { using Error::Error; };
struct UnboundedTerm : Error { using Error::Error; };
struct ArrangementTooLarge : Error { using Error::Error; };
struct LowerDimensionalBody : Error { using Error::Error; };
struct NotConvex : Error { using Error::Error; };
struct NotFullDim : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

} // namespace eucalc
