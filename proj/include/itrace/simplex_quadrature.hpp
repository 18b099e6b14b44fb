#pragma once

#include "itrace/simplex_geometry.hpp"

#include <functional>
#include <vector>

namespace itrace {

/// Quadrature on the reference d-simplex.
struct SimplexRule
{
  int dim = 1;
  int exact_degree = 0;
  std::vector<Point> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Quadrature on a face, nodes in the ambient d-space.
struct FaceRule
{
  int ambient_dim = 1;
  int exact_degree = 0;
  std::vector<Point> nodes;
  std::vector<double> weights; // sum to the face measure
};

/// Points per direction used for a target degree q.
int collapsed_points_per_direction(int q);

/// Tensor Gauss-Jacobi rule in collapsed coordinates, pushed through duffy_map.
/// Direction k (1-based, innermost first) absorbs the Duffy Jacobian factor
/// ((1-a_k)/2)^{k-1} into a Gauss-Jacobi weight with alpha = k-1.
SimplexRule simplex_rule(int d, int q);

using ScalarField = std::function<double(const Point&)>;

/// sum_i w_i f(x_i); throws NumericError naming the node if f is not finite there.
double integrate(const ScalarField& f, const SimplexRule& rule);
double integrate(const ScalarField& f, const FaceRule& rule);

/// A (d-1)-simplex rule mapped onto the face by barycentric coordinates.
FaceRule face_rule(const Face& f, int q);

/// simplex_rule(d, q) pushed onto a physical simplex; weights carry |det J|.
SimplexRule physical_element_rule(const Simplex& element, int q);

} // namespace itrace
