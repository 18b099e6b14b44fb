#pragma once

#include "itrace/pkd_basis.hpp"
#include "itrace/simplex_geometry.hpp"
#include "itrace/simplex_quadrature.hpp"

#include <Eigen/Dense>

#include <optional>

namespace itrace {

/// A polynomial in P_p as coefficients in the orthonormal PKD basis.
///
/// With an element attached, the coefficients describe the pullback to the
/// reference simplex: u(x) = sum_mu c_mu psi_mu(A^{-1} x), A the affine map
/// from the reference simplex onto the element.
class PolyCoeffs
{
public:
  PolyCoeffs(BasisSpec spec, Eigen::VectorXd coeffs, std::optional<Simplex> element = {});

  /// Zero polynomial.
  static PolyCoeffs zeros(BasisSpec spec, std::optional<Simplex> element = {});

  const BasisSpec& spec() const { return spec_; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  const std::optional<Simplex>& element() const { return element_; }
  int dim() const { return spec_.dim; }
  int degree() const { return spec_.degree; }

  /// |T| / |T^| (1 without an element).
  double volume_ratio() const;

  /// Maps a point of the element (or the reference simplex) to the reference simplex.
  Point pull_back(const Point& x) const;

private:
  BasisSpec spec_;
  Eigen::VectorXd coeffs_;
  std::optional<Simplex> element_;
};

/// Coefficients of f in P_p; f is trusted to be a polynomial of degree <= p,
/// given as a function of the element's (physical) coordinates.
PolyCoeffs expand(const ScalarField& f, const BasisSpec& spec,
                  std::optional<Simplex> element = {});

/// L2 projection onto P_n: keeps modes of total degree <= n. n = -1 gives zero.
PolyCoeffs project(const PolyCoeffs& c, int n);

/// c - project(c, n)
PolyCoeffs deflate(const PolyCoeffs& c, int n);

/// Parseval: sum c_mu^2 times |T|/|T^|.
double l2_norm_sq(const PolyCoeffs& c);

double eval(const PolyCoeffs& c, const Point& x);

} // namespace itrace
