#include "itrace/simplex_geometry.hpp"

#include "itrace/errors.hpp"

#include <cmath>
#include <string>

namespace itrace {

namespace {

double factorial(int k)
{
  double f = 1.0;
  for (int i = 2; i <= k; ++i)
    f *= i;
  return f;
}

Eigen::MatrixXd edge_matrix(const std::vector<Point>& vertices)
{
  const auto rows = vertices.front().size();
  const auto cols = static_cast<Eigen::Index>(vertices.size()) - 1;
  Eigen::MatrixXd edges(rows, cols);
  for (Eigen::Index k = 0; k < cols; ++k)
    edges.col(k) = vertices[static_cast<std::size_t>(k) + 1] - vertices.front();
  return edges;
}

} // namespace

Simplex::Simplex(std::vector<Point> vertices)
  : dim_(static_cast<int>(vertices.size()) - 1), vertices_(std::move(vertices)), volume_(0.0)
{
  if (dim_ < 1)
    throw ParameterError("a simplex needs at least two vertices");
  for (const auto& v : vertices_)
  {
    if (v.size() != dim_)
      throw ParameterError("simplex of dimension " + std::to_string(dim_)
                           + " has a vertex with " + std::to_string(v.size()) + " coordinates");
    if (!v.allFinite())
      throw ParameterError("simplex vertex has non-finite coordinates");
  }
  const Eigen::MatrixXd edges = edge_matrix(vertices_);
  volume_ = std::abs(edges.determinant()) / factorial(dim_);

  // Relative to the scale of the edges, so tiny but well-shaped simplices pass.
  const double scale = std::pow(edges.colwise().norm().maxCoeff(), dim_) / factorial(dim_);
  if (!(volume_ > 1e-13 * scale))
    throw ParameterError("degenerate simplex: vertices are affinely dependent");
}

bool Simplex::operator==(const Simplex& other) const
{
  if (dim_ != other.dim_)
    return false;
  for (std::size_t k = 0; k < vertices_.size(); ++k)
    if (vertices_[k] != other.vertices_[k])
      return false;
  return true;
}

Simplex reference_simplex(int d)
{
  if (d < 1)
    throw ParameterError("reference simplex dimension must be >= 1");
  std::vector<Point> vertices;
  const Point v0 = Point::Constant(d, -1.0);
  vertices.push_back(v0);
  for (int k = 0; k < d; ++k)
  {
    Point v = v0;
    v(k) += 2.0;
    vertices.push_back(v);
  }
  return Simplex(std::move(vertices));
}

double volume(const Simplex& s) { return s.volume(); }

double reference_volume(int d) { return std::pow(2.0, d) / factorial(d); }

Face face(const Simplex& s, int opposite)
{
  const int d = s.dim();
  if (opposite < 0 || opposite > d)
    throw ParameterError("face index " + std::to_string(opposite) + " out of range 0.."
                         + std::to_string(d));
  Face f;
  f.parent_dim = d;
  f.opposite_vertex = opposite;
  for (int k = 0; k <= d; ++k)
    if (k != opposite)
      f.vertices.push_back(s.vertex(k));

  if (d == 1)
  {
    f.measure = 1.0;
    return f;
  }
  const Eigen::MatrixXd edges = edge_matrix(f.vertices);
  const Eigen::MatrixXd gram = edges.transpose() * edges;
  f.measure = std::sqrt(std::abs(gram.determinant())) / factorial(d - 1);
  return f;
}

bool face_belongs_to(const Face& f, const Simplex& s)
{
  if (f.parent_dim != s.dim() || f.opposite_vertex < 0 || f.opposite_vertex > s.dim())
    return false;
  if (static_cast<int>(f.vertices.size()) != s.dim())
    return false;
  std::size_t j = 0;
  for (int k = 0; k <= s.dim(); ++k)
  {
    if (k == f.opposite_vertex)
      continue;
    if (f.vertices[j++] != s.vertex(k))
      return false;
  }
  return true;
}

Point duffy_map(const Point& cube_point)
{
  const auto d = cube_point.size();
  Point x(d);
  double tail = 1.0; // prod_{l>k} (1-u_l)
  for (Eigen::Index k = d - 1; k >= 0; --k)
  {
    const double u = 0.5 * (cube_point(k) + 1.0);
    x(k) = 2.0 * u * tail - 1.0;
    tail *= 1.0 - u;
  }
  return x;
}

Point inverse_duffy_map(const Point& simplex_point)
{
  const auto d = simplex_point.size();
  Point a(d);
  double tail = 1.0; // 1 - sum_{l>k} y_l
  for (Eigen::Index k = d - 1; k >= 0; --k)
  {
    const double y = 0.5 * (simplex_point(k) + 1.0);
    if (tail <= 0.0)
      a(k) = 0.0;
    else
      a(k) = 2.0 * y / tail - 1.0;
    tail -= y;
  }
  return a;
}

AffineMap::AffineMap(Eigen::MatrixXd linear, Eigen::VectorXd offset)
  : linear_(std::move(linear)), offset_(std::move(offset)), lu_(linear_),
    det_(linear_.determinant())
{
}

AffineMap affine_map(const Simplex& from, const Simplex& to)
{
  if (from.dim() != to.dim())
    throw ParameterError("affine_map: dimension mismatch (" + std::to_string(from.dim())
                         + " vs " + std::to_string(to.dim()) + ")");
  const Eigen::MatrixXd src = edge_matrix(from.vertices());
  const Eigen::MatrixXd dst = edge_matrix(to.vertices());
  Eigen::MatrixXd linear = dst * src.inverse();
  Eigen::VectorXd offset = to.vertex(0) - linear * from.vertex(0);
  return AffineMap(std::move(linear), std::move(offset));
}

bool in_reference_simplex(const Point& x, double tol)
{
  double sum = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k)
  {
    const double y = x(k) + 1.0;
    if (y < -tol)
      return false;
    sum += y;
  }
  return sum <= 2.0 + tol;
}

} // namespace itrace
