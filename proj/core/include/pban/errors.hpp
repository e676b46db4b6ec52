#ifndef PBAN_ERRORS_HPP
#define PBAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pban {

/// Base class for all polyban errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& msg = "dimension mismatch") : Error(msg) {}
};

struct DimensionTooLarge : Error {
  explicit DimensionTooLarge(const std::string& msg = "dimension exceeds cap") : Error(msg) {}
};

struct InfeasibleInput : Error {
  explicit InfeasibleInput(const std::string& msg = "infeasible constraint system") : Error(msg) {}
};

struct Unbounded : Error {
  explicit Unbounded(const std::string& msg = "objective unbounded") : Error(msg) {}
};

struct DegenerateBall : Error {
  explicit DegenerateBall(const std::string& msg = "ball is not full-dimensional") : Error(msg) {}
};

struct UnboundedBall : Error {
  explicit UnboundedBall(const std::string& msg = "H-representation is unbounded") : Error(msg) {}
};

struct ZeroVector : Error {
  explicit ZeroVector(const std::string& msg = "vector must be nonzero") : Error(msg) {}
};

struct NotIsometric : Error {
  explicit NotIsometric(const std::string& msg = "map is not an isometric embedding") : Error(msg) {}
};

struct NotExtendingIdentity : Error {
  explicit NotExtendingIdentity(const std::string& msg = "map does not restrict to the identity on the base")
      : Error(msg) {}
};

struct NotKatetov : Error {
  explicit NotKatetov(const std::string& msg = "function fails the Katetov axioms") : Error(msg) {}
};

struct WrongArity : Error {
  explicit WrongArity(const std::string& msg = "operation requires a 1-variable type") : Error(msg) {}
};

struct BaseMismatch : Error {
  explicit BaseMismatch(const std::string& msg = "types have different base space or arity") : Error(msg) {}
};

struct EmptyRegion : Error {
  explicit EmptyRegion(const std::string& msg = "region is empty") : Error(msg) {}
};

struct NotABasis : Error {
  explicit NotABasis(const std::string& msg = "vectors do not form a basis") : Error(msg) {}
};

struct GridTooLarge : Error {
  explicit GridTooLarge(const std::string& msg = "requested grid exceeds the configured cap") : Error(msg) {}
};

struct NoAnchorsFound : Error {
  explicit NoAnchorsFound(const std::string& msg = "no separated anchor family found on the search grid")
      : Error(msg) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

}  // namespace pban

#endif
