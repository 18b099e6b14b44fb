#include "itrace/pkd_basis.hpp"

#include "itrace/errors.hpp"
#include "itrace/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace itrace {

MultiIndex::MultiIndex(std::vector<int> components) : components_(std::move(components))
{
  for (int c : components_)
    if (c < 0)
      throw ParameterError("multi-index components must be non-negative");
  total_ = std::accumulate(components_.begin(), components_.end(), 0);
}

int MultiIndex::partial_degree(int k) const
{
  return std::accumulate(components_.begin(), components_.begin() + k, 0);
}

std::vector<int> MultiIndex::leading() const
{
  if (components_.empty())
    return {};
  return {components_.begin(), components_.end() - 1};
}

std::size_t BasisSpec::prefix_size(int n) const
{
  if (n < 0)
    return 0;
  if (n >= degree)
    return modes.size();
  return dim_polynomial_space(n, dim);
}

std::size_t dim_polynomial_space(int p, int d)
{
  if (p < 0)
    return 0;
  // binomial(p+d, d), exact in integers for the sizes used here
  std::size_t result = 1;
  for (int k = 1; k <= d; ++k)
    result = result * static_cast<std::size_t>(p + k) / static_cast<std::size_t>(k);
  return result;
}

namespace {

void enumerate_into(int d, int budget, std::vector<int>& prefix, std::vector<MultiIndex>& out)
{
  if (static_cast<int>(prefix.size()) == d)
  {
    out.emplace_back(prefix);
    return;
  }
  for (int c = 0; c <= budget; ++c)
  {
    prefix.push_back(c);
    enumerate_into(d, budget - c, prefix, out);
    prefix.pop_back();
  }
}

// Weighted norm of direction k's factor: int ((1-a)/2)^{2s+k-1} P_n^{(2s+k-1,0)}(a)^2 da.
double factor_norm(int k, int s, int n)
{
  const double alpha = 2.0 * s + k - 1.0;
  return std::sqrt(jacobi_norm_sq(n, {alpha, 0.0}) / std::pow(2.0, alpha));
}

void check_point(const Point& point, int d)
{
  if (point.size() != d)
    throw ParameterError("point dimension " + std::to_string(point.size())
                         + " does not match basis dimension " + std::to_string(d));
  if (!in_reference_simplex(point, 1e-12))
  {
    std::ostringstream msg;
    msg << "point (" << point.transpose() << ") lies outside the reference simplex";
    throw DomainError(msg.str());
  }
}

} // namespace

BasisSpec enumerate_modes(int p, int d)
{
  if (p < 0)
    throw ParameterError("polynomial degree must be non-negative");
  if (d < 1)
    throw ParameterError("dimension must be >= 1");
  BasisSpec spec;
  spec.dim = d;
  spec.degree = p;
  std::vector<int> prefix;
  enumerate_into(d, p, prefix, spec.modes);
  std::sort(spec.modes.begin(), spec.modes.end(), [](const MultiIndex& x, const MultiIndex& y) {
    if (x.total_degree() != y.total_degree())
      return x.total_degree() < y.total_degree();
    return x.components() < y.components();
  });
  return spec;
}

double pkd_eval(const MultiIndex& mode, const Point& point)
{
  const int d = mode.dim();
  check_point(point, d);
  const Point a = inverse_duffy_map(point);

  double value = 1.0;
  int s = 0;
  for (int k = 1; k <= d; ++k)
  {
    const int n = mode[k - 1];
    const double x = a(k - 1);
    const double collapse = 0.5 * (1.0 - x);
    if (s > 0 && collapse == 0.0)
      return 0.0;
    const double alpha = 2.0 * s + k - 1.0;
    value *= std::pow(collapse, s) * jacobi_eval(n, {alpha, 0.0}, x) / factor_norm(k, s, n);
    s += n;
  }
  return value;
}

Eigen::MatrixXd pkd_eval_batch(const BasisSpec& spec, const std::vector<Point>& points)
{
  const int d = spec.dim;
  const int p = spec.degree;
  const auto num_points = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd values(static_cast<Eigen::Index>(spec.size()), num_points);

  // norms[k-1][s][n]
  const auto stride = static_cast<std::size_t>(p + 1);
  std::vector<double> inv_norms(static_cast<std::size_t>(d) * stride * stride, 0.0);
  auto slot = [&](int k, int s, int n) {
    return (static_cast<std::size_t>(k - 1) * stride + static_cast<std::size_t>(s)) * stride
           + static_cast<std::size_t>(n);
  };
  for (int k = 1; k <= d; ++k)
    for (int s = 0; s <= p; ++s)
      for (int n = 0; n + s <= p; ++n)
        inv_norms[slot(k, s, n)] = 1.0 / factor_norm(k, s, n);

  std::vector<double> factors(inv_norms.size());
  for (Eigen::Index j = 0; j < num_points; ++j)
  {
    const Point& point = points[static_cast<std::size_t>(j)];
    check_point(point, d);
    const Point a = inverse_duffy_map(point);

    for (int k = 1; k <= d; ++k)
    {
      const double x = a(k - 1);
      const double collapse = 0.5 * (1.0 - x);
      for (int s = 0; s <= p; ++s)
      {
        double* row = &factors[slot(k, s, 0)];
        const double alpha = 2.0 * s + k - 1.0;
        jacobi_eval_all(p - s, {alpha, 0.0}, x, row);
        const double power = (s > 0 && collapse == 0.0) ? 0.0 : std::pow(collapse, s);
        for (int n = 0; n + s <= p; ++n)
          row[n] *= power * inv_norms[slot(k, s, n)];
      }
    }

    for (std::size_t mu = 0; mu < spec.size(); ++mu)
    {
      const MultiIndex& mode = spec.modes[mu];
      double value = 1.0;
      int s = 0;
      for (int k = 1; k <= d; ++k)
      {
        const int n = mode[k - 1];
        value *= factors[slot(k, s, n)];
        s += n;
      }
      values(static_cast<Eigen::Index>(mu), j) = value;
    }
  }
  return values;
}

} // namespace itrace
