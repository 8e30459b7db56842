#pragma once

#include <stdexcept>
#include <string>

namespace affsurf {

// All toolkit errors derive from Error so callers can catch one type.
// InvalidInput covers malformed bodies and files (CLI exit code 2),
// DomainError covers mathematically out-of-range requests (exit code 3).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInput : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct OriginNotInterior : DomainError {
  OriginNotInterior() : DomainError("origin is not strictly interior to the body") {}
  explicit OriginNotInterior(const std::string& what) : DomainError(what) {}
};

struct SingularMap : InvalidInput {
  SingularMap() : InvalidInput("affine map has singular linear part") {}
};

struct NonConvexBody : InvalidInput {
  explicit NonConvexBody(const std::string& what) : InvalidInput(what) {}
};

struct DegenerateBody : InvalidInput {
  explicit DegenerateBody(const std::string& what) : InvalidInput(what) {}
};

struct NotCentered : DomainError {
  explicit NotCentered(const std::string& what) : DomainError(what) {}
};

struct PEqualsMinusN : DomainError {
  PEqualsMinusN() : DomainError("p = -n is outside the admissible parameter range") {}
};

struct POutOfRange : DomainError {
  explicit POutOfRange(const std::string& what) : DomainError(what) {}
};

struct DeltaOutOfRange : DomainError {
  explicit DeltaOutOfRange(const std::string& what) : DomainError(what) {}
};

struct EmptyFloatingBody : DomainError {
  explicit EmptyFloatingBody(const std::string& what) : DomainError(what) {}
};

struct NonMonotoneSequence : InvalidInput {
  explicit NonMonotoneSequence(const std::string& what) : InvalidInput(what) {}
};

struct SingularCovariance : DomainError {
  explicit SingularCovariance(const std::string& what) : DomainError(what) {}
};

struct NotIsotropic : DomainError {
  explicit NotIsotropic(const std::string& what) : DomainError(what) {}
};

struct NotConverged : Error {
  explicit NotConverged(const std::string& what) : Error(what) {}
};

struct NotDivergentRange : DomainError {
  explicit NotDivergentRange(const std::string& what) : DomainError(what) {}
};

struct ConstructionRefused : DomainError {
  explicit ConstructionRefused(const std::string& what) : DomainError(what) {}
};

struct IllConditionedGrid : InvalidInput {
  explicit IllConditionedGrid(const std::string& what) : InvalidInput(what) {}
};

struct Unsupported : InvalidInput {
  explicit Unsupported(const std::string& what) : InvalidInput(what) {}
};

}  // namespace affsurf
