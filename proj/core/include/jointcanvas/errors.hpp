#pragma once

#include <stdexcept>
#include <string>

namespace jointcanvas {

// Base class for all contract violations raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A joint command or configuration lies outside the arm's joint limits.
class LimitViolation : public Error {
 public:
  using Error::Error;
};

// Too few constraints to pose the requested fit.
class InsufficientConstraints : public Error {
 public:
  using Error::Error;
};

// Ray bundle too close to parallel for a stable intersection.
class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

// Pixel coordinate outside the image.
class OutOfBounds : public Error {
 public:
  using Error::Error;
};

// View set does not match the expected camera names/sizes.
class WrongViewSet : public Error {
 public:
  using Error::Error;
};

class UnknownTask : public Error {
 public:
  using Error::Error;
};

class UnknownCategory : public Error {
 public:
  using Error::Error;
};

class UnknownFactor : public Error {
 public:
  using Error::Error;
};

// Scripted expert could not produce a valid demonstration.
class ExpertFailure : public Error {
 public:
  using Error::Error;
};

class EmptyDemo : public Error {
 public:
  using Error::Error;
};

// Controller-set construction requires the sphere coverage mask.
class MissingMask : public Error {
 public:
  using Error::Error;
};

// No cross-view-consistent detection set exists for any joint.
class NoConsistentSet : public Error {
 public:
  using Error::Error;
};

// End-effector chunk conversion failed to reach a waypoint.
class IkChainFailure : public Error {
 public:
  using Error::Error;
};

// External drawer did not respond within the deadline.
class DrawerTimeout : public Error {
 public:
  explicit DrawerTimeout(const std::string& what, int seq)
      : Error(what), sequence(seq) {}
  int sequence = -1;
};

// External drawer produced an unreadable or mis-sized target image.
class BadTargetImage : public Error {
 public:
  using Error::Error;
};

class IoFailure : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace jointcanvas
