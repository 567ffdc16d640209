#pragma once

#include <stdexcept>
#include <string>

namespace gridhom {

// Base of every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SyntaxError : Error { using Error::Error; };       // malformed diagram text
struct ValidationError : Error { using Error::Error; };   // marking conditions violated
struct TraceError : Error { using Error::Error; };        // edge path never reaches a vertex
struct BalanceError : Error { using Error::Error; };      // in/out weight sums differ at a vertex
struct IllegalMove : Error { using Error::Error; };
struct PatternNotFound : Error { using Error::Error; };   // no destabilization site at position
struct NotAComplex : Error { using Error::Error; };       // boundary fails d*d = 0
struct DeconvolutionError : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct NotGood : Error { using Error::Error; };           // corner convention for block builds
struct WeightMismatch : Error { using Error::Error; };
struct VertexNotAtCorner : Error { using Error::Error; };
struct InternalError : Error { using Error::Error; };

}  // namespace gridhom
