#pragma once

// Independent reference computations used by the tests. Nothing here calls the
// library's recurrence, quadrature, or basis code.

#include "itrace/simplex_geometry.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

namespace oracle {

inline double binomial(double n, int k)
{
  double r = 1.0;
  for (int i = 1; i <= k; ++i)
    r *= (n - k + i) / i;
  return r;
}

inline double factorial(int n)
{
  double r = 1.0;
  for (int i = 2; i <= n; ++i)
    r *= i;
  return r;
}

/// Explicit sum: P_n^{(a,b)}(x) = sum_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^{n-s}.
inline double jacobi_explicit(int n, double a, double b, double x)
{
  double total = 0.0;
  for (int s = 0; s <= n; ++s)
    total += binomial(n + a, n - s) * binomial(n + b, s) * std::pow((x - 1.0) / 2.0, s)
             * std::pow((x + 1.0) / 2.0, n - s);
  return total;
}

/// Sum of the absolute values of the explicit-sum terms; bounds its rounding error.
inline double jacobi_explicit_magnitude(int n, double a, double b, double x)
{
  double total = 0.0;
  for (int s = 0; s <= n; ++s)
    total += std::abs(binomial(n + a, n - s) * binomial(n + b, s) * std::pow((x - 1.0) / 2.0, s)
                      * std::pow((x + 1.0) / 2.0, n - s));
  return total;
}

/// int_{-1}^{1} x^k (1-x)^alpha dx for integer alpha, by binomial expansion.
inline double weighted_monomial_moment(int k, int alpha)
{
  double total = 0.0;
  for (int j = 0; j <= alpha; ++j)
  {
    const int m = k + j;
    const double mono = (m % 2 == 0) ? 2.0 / (m + 1) : 0.0;
    total += binomial(alpha, j) * ((j % 2 == 0) ? 1.0 : -1.0) * mono;
  }
  return total;
}

/// int over the reference simplex of prod_i x_i^{k_i}, via x = 2y-1 and the
/// Dirichlet integral over the unit simplex: prod m_i! / (sum m + d)!.
inline double reference_monomial_integral(const std::vector<int>& k)
{
  const int d = static_cast<int>(k.size());
  // expand prod (2y_i - 1)^{k_i} = prod sum_{m_i} C(k_i,m_i) 2^{m_i} y^{m_i} (-1)^{k_i-m_i}
  std::vector<int> m(static_cast<std::size_t>(d), 0);
  double total = 0.0;
  while (true)
  {
    double coeff = 1.0;
    int msum = 0;
    double dirichlet_num = 1.0;
    for (int i = 0; i < d; ++i)
    {
      const int ki = k[static_cast<std::size_t>(i)];
      const int mi = m[static_cast<std::size_t>(i)];
      coeff *= binomial(ki, mi) * std::pow(2.0, mi) * (((ki - mi) % 2 == 0) ? 1.0 : -1.0);
      msum += mi;
      dirichlet_num *= factorial(mi);
    }
    total += coeff * dirichlet_num / factorial(msum + d);
    int i = 0;
    while (i < d && ++m[static_cast<std::size_t>(i)] > k[static_cast<std::size_t>(i)])
      m[static_cast<std::size_t>(i++)] = 0;
    if (i == d)
      break;
  }
  return total * std::pow(2.0, d); // dx = 2^d dy
}

/// Explicit triangle mode: collapsed coords a = 2(1+r)/(1-s) - 1, b = s.
inline double triangle_mode(int i, int j, double r, double s)
{
  const double b = s;
  const double a = (s < 1.0) ? 2.0 * (1.0 + r) / (1.0 - s) - 1.0 : 0.0;
  const double f1 = jacobi_explicit(i, 0, 0, a) / std::sqrt(2.0 / (2 * i + 1));
  const double f2 = std::pow((1.0 - b) / 2.0, i) * jacobi_explicit(j, 2 * i + 1, 0, b)
                    / std::sqrt(1.0 / (i + j + 1));
  return f1 * f2;
}

/// Tetrahedron mode with the standard collapsed map
/// r = (1+a)(1-b)(1-c)/4 - 1, s = (1+b)(1-c)/2 - 1, t = c.
inline double tetrahedron_mode(int i, int j, int k, double r, double s, double t)
{
  const double c = t;
  const double b = (t < 1.0) ? 2.0 * (1.0 + s) / (1.0 - t) - 1.0 : 0.0;
  const double denom = -s - t;
  const double a = (denom > 0.0) ? 2.0 * (1.0 + r) / denom - 1.0 : 0.0;
  const double f1 = jacobi_explicit(i, 0, 0, a) / std::sqrt(2.0 / (2 * i + 1));
  const double f2 = std::pow((1.0 - b) / 2.0, i) * jacobi_explicit(j, 2 * i + 1, 0, b)
                    / std::sqrt(2.0 / (2.0 * (i + j) + 2));
  const double f3 = std::pow((1.0 - c) / 2.0, i + j) * jacobi_explicit(k, 2 * (i + j) + 2, 0, c)
                    / std::sqrt(2.0 / (2.0 * (i + j + k) + 3));
  return f1 * f2 * f3;
}

/// Random simplex with vertices in [-2,2]^d, rejecting poorly shaped ones.
inline itrace::Simplex random_simplex(int d, std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  while (true)
  {
    std::vector<itrace::Point> verts;
    for (int k = 0; k <= d; ++k)
    {
      itrace::Point v(d);
      for (int i = 0; i < d; ++i)
        v(i) = coord(rng);
      verts.push_back(v);
    }
    Eigen::MatrixXd edges(d, d);
    for (int k = 0; k < d; ++k)
      edges.col(k) = verts[static_cast<std::size_t>(k) + 1] - verts[0];
    const double vol = std::abs(edges.determinant()) / factorial(d);
    const double scale = std::pow(edges.colwise().norm().maxCoeff(), d) / factorial(d);
    if (vol > 0.05 * scale)
      return itrace::Simplex(std::move(verts));
  }
}

/// Largest eigenvalue by a dense symmetric eigensolver.
inline double dense_largest_eigenvalue(const Eigen::MatrixXd& m)
{
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

} // namespace oracle
