#pragma once

#include <stdexcept>
#include <string>

namespace hexknot {

/// Base class for all library errors so callers can catch in one place.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// -- curves ------------------------------------------------------------
class UnknownCurveError : public Error {
 public:
  using Error::Error;
};
class CurveValidationError : public Error {
 public:
  using Error::Error;
};
/// The stereographic projection is undefined near the inversion point.
class PointAtInfinityError : public Error {
 public:
  using Error::Error;
};

// -- polygons / diagrams -----------------------------------------------
class PolygonError : public Error {
 public:
  using Error::Error;
};
/// A projection direction failed a genericity tolerance. The message names
/// the tolerance that failed; callers are expected to resample.
class NonGenericDirectionError : public Error {
 public:
  using Error::Error;
};
class GenericityExhaustedError : public Error {
 public:
  using Error::Error;
};
class TooManyCrossingsError : public Error {
 public:
  using Error::Error;
};
class InconsistentProjectionsError : public Error {
 public:
  using Error::Error;
};
class UnstableInvariantError : public Error {
 public:
  using Error::Error;
};

// -- configuration geometry ---------------------------------------------
class DegenerateChordError : public Error {
 public:
  using Error::Error;
};
class WindowTooLargeError : public Error {
 public:
  using Error::Error;
};
class UnclassifiableConfigError : public Error {
 public:
  using Error::Error;
};
class MissingCrossingError : public Error {
 public:
  using Error::Error;
};
class UncoveredCaseError : public Error {
 public:
  using Error::Error;
};

// -- solvers -------------------------------------------------------------
class NoConvergenceError : public Error {
 public:
  using Error::Error;
};
class OrderingCollapseError : public Error {
 public:
  using Error::Error;
};
class TangentDegenerateError : public Error {
 public:
  explicit TangentDegenerateError(const std::string& msg, int dim)
      : Error(msg), null_space_dim(dim) {}
  int null_space_dim;
};

// -- i/o -------------------------------------------------------------------
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace hexknot
