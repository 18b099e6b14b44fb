#pragma once

#include <Eigen/Dense>

#include <vector>

namespace itrace {

using Point = Eigen::VectorXd;

/// A non-degenerate d-simplex given by its d+1 vertices in R^d.
class Simplex
{
public:
  /// Throws ParameterError on inconsistent sizes or a degenerate vertex set.
  explicit Simplex(std::vector<Point> vertices);

  int dim() const { return dim_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const Point& vertex(int k) const { return vertices_.at(static_cast<std::size_t>(k)); }
  double volume() const { return volume_; }

  bool operator==(const Simplex& other) const;

private:
  int dim_;
  std::vector<Point> vertices_;
  double volume_;
};

/// The facet of a simplex opposite one of its vertices.
struct Face
{
  int parent_dim = 0;
  int opposite_vertex = 0;
  std::vector<Point> vertices; // parent's vertices with the opposite one removed, order kept
  double measure = 0.0;        // (d-1)-dimensional measure; 1 for the point faces of d=1
};

/// Vertices v0 = (-1,...,-1), v_k = v0 + 2 e_k.
Simplex reference_simplex(int d);

/// |det(v1-v0, ..., vd-v0)| / d!
double volume(const Simplex& s);

/// 2^d / d!
double reference_volume(int d);

/// Face opposite vertex `opposite`; measure from the Gram determinant of its edge vectors.
Face face(const Simplex& s, int opposite);

/// True when `f` is the face of `s` opposite f.opposite_vertex.
bool face_belongs_to(const Face& f, const Simplex& s);

/// Index of the face where the last collapsed coordinate equals -1. On the
/// reference simplex this is the face opposite v_d.
constexpr int collapsed_face_index(int d) { return d; }

/// Collapsed (Duffy) map from [-1,1]^d onto the reference simplex.
///
/// With y_k = (x_k+1)/2 and u_k = (a_k+1)/2: y_d = u_d and
/// y_k = u_k * prod_{l>k} (1-u_l). For d = 2 this is r = (1+a)(1-b)/2 - 1, s = b.
Point duffy_map(const Point& cube_point);

/// Inverse of duffy_map. Coordinates left undetermined at a collapse are set to 0.
Point inverse_duffy_map(const Point& simplex_point);

/// x -> A x + b
class AffineMap
{
public:
  AffineMap(Eigen::MatrixXd linear, Eigen::VectorXd offset);

  Point apply(const Point& x) const { return linear_ * x + offset_; }
  Point apply_inverse(const Point& y) const { return lu_.solve(y - offset_); }
  double jacobian() const { return det_; }
  const Eigen::MatrixXd& linear() const { return linear_; }
  const Eigen::VectorXd& offset() const { return offset_; }

private:
  Eigen::MatrixXd linear_;
  Eigen::VectorXd offset_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  double det_;
};

/// Unique affine map sending vertex k of `from` to vertex k of `to`.
AffineMap affine_map(const Simplex& from, const Simplex& to);

/// True when `x` lies in the closed reference d-simplex up to `tol`.
bool in_reference_simplex(const Point& x, double tol = 1e-12);

} // namespace itrace
