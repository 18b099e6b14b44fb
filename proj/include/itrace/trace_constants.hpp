#pragma once

#include "itrace/pkd_basis.hpp"
#include "itrace/projection.hpp"
#include "itrace/simplex_geometry.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

namespace itrace {

/// Face Gram matrix of the deflated modes (total degree n+1..p).
///
/// Entries are int_F phi_mu phi_nu with phi_mu = sqrt(|T^|/|T|) psi_mu o A^{-1}
/// the L2(T)-orthonormal pushforward of the PKD basis. On the reference simplex
/// this is the plain face integral of psi_mu psi_nu, and for any element the
/// largest eigenvalue is the sharp constant itself.
struct FaceMassMatrix
{
  Eigen::MatrixXd entries;
  int p = 0;
  int n = -1;
  int d = 1;
  Face face;
  BasisSpec basis;              // full degree-p basis
  std::size_t first_deflated = 0; // row k of `entries` is basis.modes[first_deflated + k]
  double volume_ratio = 1.0;    // |T| / |T^|

  std::size_t size() const { return static_cast<std::size_t>(entries.rows()); }
  const MultiIndex& mode(std::size_t row) const { return basis.modes[first_deflated + row]; }
  /// Leading d-1 indices of the mode in `row`.
  std::vector<int> block_key(std::size_t row) const { return mode(row).leading(); }
};

FaceMassMatrix assemble_face_mass(int p, int n, const Simplex& simplex, const Face& face);

/// Closed-form eigenvalue of the rank-one collapsed-face block with leading
/// indices `leading` (sum sigma): sum over t = max(0, n+1-sigma)..p-sigma of
/// (2(sigma+t)+d)/2.
double block_eigenvalue_closed_form(std::span<const int> leading, int p, int n, int d);

struct EigenPair
{
  double rho = 0.0;
  Eigen::VectorXd vector;
  int iterations = 0;
  double residual = 0.0; // ||L v - rho v||
};

/// Dominant eigenpair of a symmetric positive semi-definite matrix by power
/// iteration from a fixed pseudo-random start. Stops when
/// ||L v - rho v|| <= tol * rho; throws NumericError after max_iterations.
EigenPair spectral_radius_numeric(const Eigen::MatrixXd& matrix, double tol = 1e-12,
                                  int max_iterations = 100000);
EigenPair spectral_radius_numeric(const FaceMassMatrix& matrix, double tol = 1e-12,
                                  int max_iterations = 100000);

/// (p-n)(p+n+1+d)/2
double reference_constant(int p, int n, int d);

/// (p-n)(p+n+1+d)/d * |F|/|T|
double sharp_constant(int p, int n, const Simplex& simplex, const Face& face);

/// (p+1)(p+d)/d * |F|/|T|
double wh_constant(int p, const Simplex& simplex, const Face& face);

struct SharpConstantReport
{
  int p = 0;
  int n = -1;
  int d = 1;
  int face_id = 0;
  double closed_form = 0.0;
  double numeric_rho = 0.0;
  double wh_bound = 0.0;
  PolyCoeffs extremal_coeffs;
  double achieved_ratio = 0.0;
};

SharpConstantReport extremal_polynomial(int p, int n, const Simplex& simplex, const Face& face);

/// ||u||^2 on the face by direct quadrature of the polynomial's values.
double face_norm_sq(const PolyCoeffs& c, const Face& face);

/// ||u||^2 on the element by quadrature (not Parseval).
double element_norm_sq(const PolyCoeffs& c);

struct InequalityCheck
{
  double lhs = 0.0;   // ||theta||^2 on F
  double rhs = 0.0;   // sharp constant * ||theta||^2 on T
  double ratio = 0.0; // lhs / rhs, 0 when theta = 0
  bool holds = true;
};

/// Checks the trace bound for theta = deflate(c, n). The polynomial's element
/// (or the reference simplex when none is attached) must be `simplex`.
InequalityCheck verify_inequality(const PolyCoeffs& c, int n, const Simplex& simplex,
                                  const Face& face);

struct RatioScan
{
  double max_ratio = 0.0; // face norm^2 / element norm^2
  PolyCoeffs argmax;
  std::size_t samples = 0;
};

/// Face/element norm ratio maximized over `count` standard-normal deflated
/// coefficient vectors drawn from a generator seeded with `seed`, plus any
/// `extra` full-basis coefficient vectors (deflated before use).
RatioScan random_ratio_scan(int p, int n, const Simplex& simplex, const Face& face,
                            std::size_t count, std::uint64_t seed,
                            const std::vector<Eigen::VectorXd>& extra = {});

} // namespace itrace
