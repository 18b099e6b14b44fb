#include "itrace/jacobi.hpp"

#include "itrace/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace itrace {

void JacobiParams::validate() const
{
  if (!(alpha > -1.0) || !(beta > -1.0))
  {
    std::ostringstream msg;
    msg << "Jacobi parameters must satisfy alpha > -1 and beta > -1 (got alpha=" << alpha
        << ", beta=" << beta << ")";
    throw ParameterError(msg.str());
  }
}

void jacobi_eval_all(int n, JacobiParams params, double x, double* out)
{
  params.validate();
  if (n < 0)
    throw ParameterError("Jacobi degree must be non-negative");

  const double a = params.alpha;
  const double b = params.beta;
  out[0] = 1.0;
  if (n == 0)
    return;
  out[1] = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
  for (int k = 2; k <= n; ++k)
  {
    const double kk = k;
    const double s = 2.0 * kk + a + b;
    const double c1 = 2.0 * kk * (kk + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
    const double c3 = 2.0 * (kk + a - 1.0) * (kk + b - 1.0) * s;
    out[k] = (c2 * out[k - 1] - c3 * out[k - 2]) / c1;
  }
}

double jacobi_eval(int n, JacobiParams params, double x)
{
  if (n < 0)
    throw ParameterError("Jacobi degree must be non-negative");
  std::vector<double> values(static_cast<std::size_t>(n) + 1);
  jacobi_eval_all(n, params, x, values.data());
  return values.back();
}

double jacobi_endpoint_minus_one(int n, double /*alpha*/)
{
  return (n % 2 == 0) ? 1.0 : -1.0;
}

double jacobi_zeroth_moment(JacobiParams params)
{
  params.validate();
  const double a = params.alpha;
  const double b = params.beta;
  return std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0)
                  - std::lgamma(a + b + 2.0));
}

double jacobi_norm_sq(int n, JacobiParams params)
{
  params.validate();
  if (n < 0)
    throw ParameterError("Jacobi degree must be non-negative");
  if (n == 0)
    return jacobi_zeroth_moment(params);

  const double a = params.alpha;
  const double b = params.beta;
  const double nn = n;
  const double log_ratio = std::lgamma(nn + a + 1.0) + std::lgamma(nn + b + 1.0)
                           - std::lgamma(nn + a + b + 1.0) - std::lgamma(nn + 1.0);
  return std::exp((a + b + 1.0) * std::log(2.0) + log_ratio) / (2.0 * nn + a + b + 1.0);
}

namespace {

// P_m and its derivative, using d/dx P_m^{(a,b)} = (m+a+b+1)/2 P_{m-1}^{(a+1,b+1)}.
std::pair<double, double> value_and_derivative(int m, JacobiParams params, double x)
{
  const double value = jacobi_eval(m, params, x);
  const JacobiParams shifted{params.alpha + 1.0, params.beta + 1.0};
  const double deriv
      = 0.5 * (m + params.alpha + params.beta + 1.0) * jacobi_eval(m - 1, shifted, x);
  return {value, deriv};
}

} // namespace

QuadratureRule1D gauss_jacobi_rule(int m, JacobiParams params)
{
  params.validate();
  if (m < 1)
    throw ParameterError("Gauss-Jacobi rule needs at least one point");

  const double a = params.alpha;
  const double b = params.beta;

  // Symmetric tridiagonal Jacobi matrix of the monic recurrence.
  Eigen::VectorXd diag(m);
  Eigen::VectorXd offdiag(std::max(m - 1, 0));
  for (int k = 0; k < m; ++k)
  {
    const double s = 2.0 * k + a + b;
    if (k == 0)
      diag(k) = (b - a) / (a + b + 2.0);
    else
      diag(k) = (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < m; ++k)
  {
    const double s = 2.0 * k + a + b;
    const double num = 4.0 * k * (k + a) * (k + b) * (k + a + b);
    const double den = s * s * (s + 1.0) * (s - 1.0);
    offdiag(k - 1) = std::sqrt(num / den);
  }

  std::vector<double> nodes(m);
  if (m == 1)
  {
    nodes[0] = diag(0);
  }
  else
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, offdiag, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw NumericError("Gauss-Jacobi: tridiagonal eigenvalue solve failed (m="
                         + std::to_string(m) + ")");
    for (int k = 0; k < m; ++k)
      nodes[k] = solver.eigenvalues()(k);
  }

  const double log_christoffel = (a + b + 1.0) * std::log(2.0) + std::lgamma(m + a + 1.0)
                                 + std::lgamma(m + b + 1.0) - std::lgamma(m + a + b + 1.0)
                                 - std::lgamma(m + 1.0);
  const double christoffel = std::exp(log_christoffel);

  std::vector<double> weights(m);
  for (int k = 0; k < m; ++k)
  {
    double x = nodes[k];
    double step = 0.0;
    for (int iter = 0; iter < 3; ++iter)
    {
      const auto [value, deriv] = value_and_derivative(m, params, x);
      if (deriv == 0.0)
        break;
      step = value / deriv;
      x -= step;
    }
    if (!std::isfinite(x) || std::abs(step) > 1e-10 || x <= -1.0 || x >= 1.0)
    {
      std::ostringstream msg;
      msg << "Gauss-Jacobi: node " << k << " of m=" << m << " (alpha=" << a << ", beta=" << b
          << ") failed to converge; last Newton step " << step << ", node " << x;
      throw NumericError(msg.str());
    }
    nodes[k] = x;
    const double deriv = value_and_derivative(m, params, x).second;
    weights[k] = christoffel / ((1.0 - x * x) * deriv * deriv);
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return nodes[i] < nodes[j]; });

  QuadratureRule1D rule;
  rule.params = params;
  rule.exact_degree = 2 * m - 1;
  rule.nodes.reserve(m);
  rule.weights.reserve(m);
  for (auto idx : order)
  {
    rule.nodes.push_back(nodes[idx]);
    rule.weights.push_back(weights[idx]);
  }
  return rule;
}

} // namespace itrace
