#include "itrace/simplex_quadrature.hpp"

#include "itrace/errors.hpp"
#include "itrace/jacobi.hpp"

#include <cmath>
#include <sstream>

namespace itrace {

int collapsed_points_per_direction(int q) { return (q + 2) / 2 + 1; }

SimplexRule simplex_rule(int d, int q)
{
  if (d < 1)
    throw ParameterError("simplex_rule: dimension must be >= 1");
  if (q < 0)
    throw ParameterError("simplex_rule: degree must be non-negative");

  const int m = collapsed_points_per_direction(q);
  std::vector<QuadratureRule1D> directions;
  for (int k = 1; k <= d; ++k)
    directions.push_back(gauss_jacobi_rule(m, {static_cast<double>(k - 1), 0.0}));

  SimplexRule rule;
  rule.dim = d;
  rule.exact_degree = q;

  std::vector<int> counter(static_cast<std::size_t>(d), 0);
  Point cube(d);
  while (true)
  {
    double w = 1.0;
    for (int k = 0; k < d; ++k)
    {
      const auto& dir = directions[static_cast<std::size_t>(k)];
      const auto idx = static_cast<std::size_t>(counter[static_cast<std::size_t>(k)]);
      cube(k) = dir.nodes[idx];
      w *= dir.weights[idx] / std::pow(2.0, k);
    }
    rule.nodes.push_back(duffy_map(cube));
    rule.weights.push_back(w);

    int k = 0;
    while (k < d && ++counter[static_cast<std::size_t>(k)] == m)
      counter[static_cast<std::size_t>(k++)] = 0;
    if (k == d)
      break;
  }
  return rule;
}

namespace {

template <typename Rule>
double integrate_impl(const ScalarField& f, const Rule& rule)
{
  double total = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
  {
    const double value = f(rule.nodes[i]);
    if (!std::isfinite(value))
    {
      std::ostringstream msg;
      msg << "integrand is not finite at quadrature node " << i << " ("
          << rule.nodes[i].transpose() << ")";
      throw NumericError(msg.str());
    }
    total += rule.weights[i] * value;
  }
  return total;
}

} // namespace

double integrate(const ScalarField& f, const SimplexRule& rule) { return integrate_impl(f, rule); }

double integrate(const ScalarField& f, const FaceRule& rule) { return integrate_impl(f, rule); }

FaceRule face_rule(const Face& f, int q)
{
  if (q < 0)
    throw ParameterError("face_rule: degree must be non-negative");
  const int d = f.parent_dim;
  FaceRule rule;
  rule.ambient_dim = d;
  rule.exact_degree = q;
  if (d == 1)
  {
    rule.nodes.push_back(f.vertices.front());
    rule.weights.push_back(f.measure);
    return rule;
  }

  const SimplexRule ref = simplex_rule(d - 1, q);
  const double scale = f.measure / reference_volume(d - 1);
  for (std::size_t i = 0; i < ref.size(); ++i)
  {
    // Barycentric coordinates of the reference node: lambda_k = (y_k+1)/2, lambda_0 = rest.
    const Point& y = ref.nodes[i];
    Point x = Point::Zero(d);
    double lambda0 = 1.0;
    for (int k = 0; k < d - 1; ++k)
    {
      const double lambda = 0.5 * (y(k) + 1.0);
      x += lambda * f.vertices[static_cast<std::size_t>(k) + 1];
      lambda0 -= lambda;
    }
    x += lambda0 * f.vertices.front();
    rule.nodes.push_back(std::move(x));
    rule.weights.push_back(ref.weights[i] * scale);
  }
  return rule;
}

SimplexRule physical_element_rule(const Simplex& element, int q)
{
  SimplexRule rule = simplex_rule(element.dim(), q);
  const AffineMap map = affine_map(reference_simplex(element.dim()), element);
  const double jac = std::abs(map.jacobian());
  for (std::size_t i = 0; i < rule.size(); ++i)
  {
    rule.nodes[i] = map.apply(rule.nodes[i]);
    rule.weights[i] *= jac;
  }
  return rule;
}

} // namespace itrace
