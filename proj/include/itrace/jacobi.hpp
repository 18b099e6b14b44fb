#pragma once

#include <vector>

namespace itrace {

/// Exponents of the Jacobi weight (1-x)^alpha (1+x)^beta on [-1,1].
struct JacobiParams
{
  double alpha = 0.0;
  double beta = 0.0;

  /// Throws ParameterError unless alpha > -1 and beta > -1.
  void validate() const;
};

struct QuadratureRule1D
{
  std::vector<double> nodes;   // strictly increasing, in (-1,1)
  std::vector<double> weights; // positive
  JacobiParams params;
  int exact_degree = 1; // 2m-1

  std::size_t size() const { return nodes.size(); }
};

/// P_n^{(alpha,beta)}(x) by the forward three-term recurrence.
double jacobi_eval(int n, JacobiParams params, double x);

/// Fills out[0..n] with P_0..P_n at x. out must have room for n+1 values.
void jacobi_eval_all(int n, JacobiParams params, double x, double* out);

/// P_n^{(alpha,0)}(-1) = (-1)^n.
double jacobi_endpoint_minus_one(int n, double alpha);

/// int_{-1}^{1} (1-x)^alpha (1+x)^beta P_n(x)^2 dx, closed form.
double jacobi_norm_sq(int n, JacobiParams params);

/// int_{-1}^{1} (1-x)^alpha (1+x)^beta dx.
double jacobi_zeroth_moment(JacobiParams params);

/// m-point Gauss-Jacobi rule, exact to degree 2m-1 against the Jacobi weight.
///
/// Nodes come from the eigenvalues of the symmetric Jacobi matrix and are then
/// polished by Newton steps on the recurrence; weights use the closed-form
/// Christoffel numbers. Throws NumericError if a node residual stays large.
QuadratureRule1D gauss_jacobi_rule(int m, JacobiParams params);

} // namespace itrace
