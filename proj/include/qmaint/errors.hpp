#pragma once

#include <stdexcept>
#include <string>

namespace qmaint {

// Base of every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Survival product Theta_C vanished: every unit is scrapped, unit cost undefined.
class DegenerateChain : public Error {
 public:
  using Error::Error;
};

// A homogenized effectiveness denominator vanished with a nonzero numerator.
class UndefinedEffectiveness : public Error {
 public:
  using Error::Error;
};

// No critical effectiveness exists for the requested comparison.
class NoThreshold : public Error {
 public:
  using Error::Error;
};

// A closed form was requested outside the cost condition it was derived under.
class ConditionViolated : public Error {
 public:
  using Error::Error;
};

class NoRoot : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

// Monte Carlo request exceeds the configured unit budget.
class Overflow : public Error {
 public:
  using Error::Error;
};

// Malformed chain or homogenized-chain configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qmaint
