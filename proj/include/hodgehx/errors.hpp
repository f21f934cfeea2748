#ifndef HODGEHX_ERRORS_HPP
#define HODGEHX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hodgehx {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Point too close to the medial axis of an implicit surface: the closest
// point is not unique, so projection and normal are refused.
struct MedialAxisError : Error {
  using Error::Error;
};

struct InvalidResolutionError : Error {
  using Error::Error;
};

struct DegenerateElementError : Error {
  using Error::Error;
};

struct UnsupportedFamilyError : Error {
  using Error::Error;
};

struct IncompatibleFamiliesError : Error {
  using Error::Error;
};

struct NotSpdError : Error {
  using Error::Error;
};

struct ZeroDiagonalError : Error {
  using Error::Error;
};

struct InvalidCError : Error {
  using Error::Error;
};

struct DimensionMismatchError : Error {
  using Error::Error;
};

// PCG saw nonpositive curvature: the operator (or preconditioner) is not SPD.
struct BreakdownIndefiniteError : Error {
  using Error::Error;
};

// Random sampling failed to produce enough independent harmonic candidates.
struct RankDeficientSamplingError : Error {
  using Error::Error;
};

}  // namespace hodgehx

#endif
