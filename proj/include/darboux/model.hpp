#pragma once

#include <string>

#include "darboux/gaussfun.hpp"

namespace darboux {

/// An exactly solvable Schrodinger operator -d^2 + V0 with a discrete
/// spectrum whose eigenfunctions are enumerated by their number of zeros.
class SolvableModel {
 public:
  virtual ~SolvableModel() = default;

  virtual std::string name() const = 0;
  virtual RatFun potential() const = 0;
  /// Unnormalized eigenfunction with n nodes.
  virtual GaussFun eigenfunction(int n) const = 0;
  virtual Rational energy(int n) const = 0;

  DiffOp hamiltonian() const { return DiffOp::schrodinger(potential()); }
};

}  // namespace darboux
