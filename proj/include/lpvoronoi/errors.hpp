#pragma once

#include <stdexcept>
#include <string>

namespace lpv {

// Base class for domain errors raised by the library. Precondition misuse
// (non-finite input, p = 0 handed to a finite-exponent routine, empty
// vectors) throws std::invalid_argument instead.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IdenticalSites : Error {
  IdenticalSites() : Error("IdenticalSites: the two sites coincide") {}
};

struct DegeneratePair : Error {
  DegeneratePair()
      : Error("DegeneratePair: sites share an x- or y-coordinate") {}
};

struct PoleAtSite : Error {
  PoleAtSite() : Error("PoleAtSite: v_p has a pole at x = +/-u for p < 0") {}
};

struct PoleAtUnit : Error {
  PoleAtUnit() : Error("PoleAtUnit: w_p/z_p have poles at y = +/-1") {}
};

struct AsymptoteAtZero : Error {
  AsymptoteAtZero() : Error("AsymptoteAtZero: h(x) is undefined at x = 0") {}
};

struct InvalidCell : Error {
  explicit InvalidCell(const std::string& what)
      : Error("InvalidCell: " + what) {}
};

struct NoRootInCell : Error {
  explicit NoRootInCell(const std::string& what)
      : Error("NoRootInCell: " + what) {}
};

struct NoSites : Error {
  NoSites() : Error("NoSites: at least one site is required") {}
};

struct DuplicateSites : Error {
  DuplicateSites() : Error("DuplicateSites: sites must be pairwise distinct") {}
};

struct InsufficientData : Error {
  explicit InsufficientData(const std::string& what)
      : Error("InsufficientData: " + what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error("IoError: " + what) {}
};

}  // namespace lpv
