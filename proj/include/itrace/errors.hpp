#pragma once

#include <stdexcept>
#include <string>

namespace itrace {

/// Invalid argument: out-of-range degree, index, dimension, or mismatched inputs.
class ParameterError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Point outside the domain an operation is defined on.
class DomainError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

/// Non-finite values, or an iterative solve that did not converge.
class NumericError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed external input (vertex files, coefficient files).
class InputError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace itrace
