#ifndef HERDGAMES_ERRORS_HPP
#define HERDGAMES_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace herdgames {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A weight vector is not a point on the probability simplex.
struct NotASimplexPoint : Error {
  using Error::Error;
};

// Vector/matrix sizes do not match the game's action count.
struct DimensionMismatch : Error {
  using Error::Error;
};

// Invalid construction parameters (builtin games, alpha out of range, ...).
struct InvalidParams : Error {
  using Error::Error;
};

// A game document violates the JSON schema; message carries the field path.
struct SchemaError : Error {
  using Error::Error;
};

// An equilibrium face system has nullity >= 2; the game cannot be solved
// exactly by this library.
struct DegenerateGame : Error {
  using Error::Error;
};

// mu_k < 1 - alpha: the candidate herding action cannot absorb the herding
// population.
struct HerdingMassTooSmall : Error {
  using Error::Error;
};

// PoA/PoS are undefined because the social optimum is zero.
struct UndefinedRatio : Error {
  using Error::Error;
};

// The influence design game has no unique lower-level equilibrium.
struct IllPosed : Error {
  using Error::Error;
};

// No action is an equilibrium-herding choice at this alpha.
struct EmptyHerdingSet : Error {
  using Error::Error;
};

}  // namespace herdgames

#endif  // HERDGAMES_ERRORS_HPP
