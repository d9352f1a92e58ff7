#pragma once

#include <stdexcept>
#include <string>

namespace qlag {

/// Base class for every error thrown by this library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coefficient computation left the signed 64-bit range. Raised instead of
/// wrapping; results are never silently truncated.
class arithmetic_overflow : public error {
 public:
  using error::error;
};

/// An enumeration or expansion was requested above its configured degree cap.
class limit_exceeded : public error {
 public:
  using error::error;
};

/// A statistic that requires a matched vertex was asked about an unmatched one.
class unmatched_vertex : public error {
 public:
  using error::error;
};

/// A vertex index falls outside [1, n].
class vertex_out_of_range : public error {
 public:
  using error::error;
};

/// An operation defined only for homogeneous edges was applied to an
/// inhomogeneous one.
class inhomogeneous_edge : public error {
 public:
  using error::error;
};

/// A moment table does not cover the requested x-degree.
class table_too_short : public error {
 public:
  using error::error;
};

/// A monomial exponent went negative. In the signed-sum route this signals a
/// statistics bug, so it is a hard error rather than a silent clamp.
class negative_exponent : public error {
 public:
  using error::error;
};

/// An internal invariant that the proof machinery guarantees was violated
/// (for example an empty fallback candidate set in the involution).
class internal_inconsistency : public error {
 public:
  using error::error;
};

/// A structure failed its construction invariants.
class invalid_structure : public error {
 public:
  using error::error;
};

/// Malformed text or JSON input.
class parse_error : public error {
 public:
  using error::error;
};

}  // namespace qlag
