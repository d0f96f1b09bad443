#ifndef RESNET_ERRORS_HPP
#define RESNET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace resnet {

// Bad argument values: invalid vertex ids, empty subsets, negative radii.
class ArgumentError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Inputs that are well formed but violate an operation's precondition
// (disconnected network, unbalanced sources, terminal outside a subset).
class PreconditionError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// Iterative solve ran out of iterations.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double last_residual, std::size_t iterations)
      : std::runtime_error(what), last_residual_(last_residual), iterations_(iterations) {}

  double last_residual() const noexcept { return last_residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

private:
  double last_residual_;
  std::size_t iterations_;
};

// Input exceeds a hard size guard (spanning-tree enumeration, tree depth).
class CapacityError : public std::length_error {
public:
  using std::length_error::length_error;
};

// Operation not defined for the requested lattice kind.
class UnsupportedKindError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

}  // namespace resnet

#endif
