#pragma once

#include "itrace/simplex_geometry.hpp"

#include <Eigen/Dense>

#include <compare>
#include <vector>

namespace itrace {

/// Multi-index (i_1, ..., i_d) of a PKD mode.
class MultiIndex
{
public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> components);

  int dim() const { return static_cast<int>(components_.size()); }
  int total_degree() const { return total_; }
  int operator[](int k) const { return components_[static_cast<std::size_t>(k)]; }
  const std::vector<int>& components() const { return components_; }

  /// Sum of the first k components.
  int partial_degree(int k) const;

  /// First d-1 components: the block key on the collapsed face.
  std::vector<int> leading() const;

  auto operator<=>(const MultiIndex&) const = default;

private:
  std::vector<int> components_;
  int total_ = 0;
};

/// Graded mode list of P_p on the reference d-simplex.
struct BasisSpec
{
  int dim = 1;
  int degree = 0;
  std::vector<MultiIndex> modes; // ascending total degree, lexicographic within a degree

  std::size_t size() const { return modes.size(); }

  /// Number of modes of total degree <= n (0 for n < 0).
  std::size_t prefix_size(int n) const;
};

/// binomial(p+d, d)
std::size_t dim_polynomial_space(int p, int d);

BasisSpec enumerate_modes(int p, int d);

/// Orthonormal PKD mode on the reference simplex at a reference point.
///
/// Direction k (1-based) contributes ((1-a_k)/2)^{s} P_{i_k}^{(2s+k-1,0)}(a_k) / nu_k
/// with s = i_1+...+i_{k-1}, a = inverse_duffy_map(point), and nu_k the weighted
/// Jacobi norm. Throws DomainError outside the closed simplex (tolerance 1e-12).
double pkd_eval(const MultiIndex& mode, const Point& point);

/// Row mu, column j: mode mu at points[j].
Eigen::MatrixXd pkd_eval_batch(const BasisSpec& spec, const std::vector<Point>& points);

} // namespace itrace
