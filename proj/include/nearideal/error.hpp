#pragma once

#include <stdexcept>
#include <string>

namespace nearideal {

/// Parameter outside the documented range of a type or operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation point too close to a pole or essential singularity.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The realized impulse response has mass at negative times.
class CausalityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Taps realized on grids L and 2L disagree beyond tolerance.
class AliasingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reference-predictor error vanished; the error ratio is undefined.
class DegenerateDenominator : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed CSV input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace detail
}  // namespace nearideal
