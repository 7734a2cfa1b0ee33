#pragma once

#include <stdexcept>
#include <string>

namespace jetph {

enum class ErrorKind {
  UnsupportedExpression,  // non-polynomial construction, division by non-monomial, ...
  OrderOverflow,          // derivative would exceed the supported jet order
  UnknownVariable,        // coordinate not declared in the chart at hand
  NotHyperregular,        // velocity Hessian not diagonal/invertible
  Structure,              // Hamiltonian violates the no-momentum-jets shape
  Representation,         // energy variables enter non-algebraically, bad strain map, ...
  NotSkewAdjoint,         // integration-by-parts remainder does not vanish
  Validation,             // bad parameters or malformed model data
  Config,                 // unusable run configuration
  Numerical,              // solver/stability failure at run time
  Parse,                  // expression or file syntax
  Overflow,               // exact rational arithmetic left the 64-bit range
  Internal,               // invariant broken inside the library itself
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnsupportedExpression: return "unsupported expression";
    case ErrorKind::OrderOverflow: return "order overflow";
    case ErrorKind::UnknownVariable: return "unknown variable";
    case ErrorKind::NotHyperregular: return "not hyperregular";
    case ErrorKind::Structure: return "structure error";
    case ErrorKind::Representation: return "representation error";
    case ErrorKind::NotSkewAdjoint: return "not skew-adjoint";
    case ErrorKind::Validation: return "validation error";
    case ErrorKind::Config: return "config error";
    case ErrorKind::Numerical: return "numerical error";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Overflow: return "rational overflow";
    case ErrorKind::Internal: return "internal error";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace jetph
