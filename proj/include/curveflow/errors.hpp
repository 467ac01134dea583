#pragma once

#include <stdexcept>
#include <string>

namespace curveflow {

struct CurveflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A curve with two adjacent nodes closer than the geometric tolerance.
struct DegenerateSegment : CurveflowError {
  using CurveflowError::CurveflowError;
};

// A closed curve whose shoelace area is not positive (clockwise or collapsed).
struct WrongOrientation : CurveflowError {
  using CurveflowError::CurveflowError;
};

// An open chain whose first or last node is not exactly on the substrate y=0.
struct EndpointOffSubstrate : CurveflowError {
  using CurveflowError::CurveflowError;
};

// Any other violated curve invariant (node count, ordering, interior height).
struct InvalidCurve : CurveflowError {
  using CurveflowError::CurveflowError;
};

struct SingularSystem : CurveflowError {
  using CurveflowError::CurveflowError;
};

// Requested circle radius at or past the extinction time.
struct ExtinctionReached : CurveflowError {
  using CurveflowError::CurveflowError;
};

// Polygon clipping got non-simple or non-convex input it cannot handle.
struct ClippingFailure : CurveflowError {
  using CurveflowError::CurveflowError;
};

struct ConfigError : CurveflowError {
  using CurveflowError::CurveflowError;
};

}  // namespace curveflow
