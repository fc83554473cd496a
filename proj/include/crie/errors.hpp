#pragma once

#include <stdexcept>
#include <string>

namespace crie {

// Common base so callers can catch the whole family at once.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParameter : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

struct InvalidWindow : Error { using Error::Error; };
struct OutOfWindow : Error { using Error::Error; };
// Raised when the window carries no probability mass (s1 - s2 below 1e-14);
// every truncated quantity is 0/0 there.
struct DegenerateWindow : Error { using Error::Error; };

struct NotConverged : Error { using Error::Error; };
struct InfiniteMean : Error { using Error::Error; };
struct InfiniteResult : Error { using Error::Error; };
struct NonMonotoneTransform : Error { using Error::Error; };
struct NonFiniteSample : Error { using Error::Error; };
struct InsufficientData : Error { using Error::Error; };
struct DivergentDivergence : Error { using Error::Error; };

}  // namespace crie
