#pragma once

#include <stdexcept>
#include <string>

namespace spdc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Wavelength outside a Sellmeier set's validity interval.
class RangeError : public Error {
 public:
  RangeError(double lambda_um, double lo_um, double hi_um);
  double wavelength() const { return lambda_; }
  double lower() const { return lo_; }
  double upper() const { return hi_; }

 private:
  double lambda_, lo_, hi_;
};

// Invalid combination of inputs (wrong phase-matching type, bad grid, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

class NoPhaseMatchingError : public Error {
 public:
  using Error::Error;
};

class NoRootError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  SolverError(const std::string& what, double lo, double hi)
      : Error(what), lo_(lo), hi_(hi) {}
  double bracket_lo() const { return lo_; }
  double bracket_hi() const { return hi_; }

 private:
  double lo_, hi_;
};

enum class WidthErrorKind { NoPeak, PeakAtEdge, MultipleRegions };

class WidthError : public Error {
 public:
  WidthError(WidthErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
  WidthErrorKind kind() const { return kind_; }

 private:
  WidthErrorKind kind_;
};

// A_e == A_o: the two coincidence peaks coincide for every detuning.
class DegenerateWalkOffError : public Error {
 public:
  using Error::Error;
};

}  // namespace spdc
