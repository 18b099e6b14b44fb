#include "itrace/trace_constants.hpp"

#include "itrace/errors.hpp"
#include "itrace/simplex_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace itrace {

namespace {

void check_degrees(int p, int n)
{
  if (p < 0)
    throw ParameterError("polynomial degree p must be non-negative");
  if (n < -1)
    throw ParameterError("projection degree n must be >= -1");
  if (n > p)
    throw ParameterError("projection degree n=" + std::to_string(n) + " exceeds p="
                         + std::to_string(p));
}

void check_face(const Simplex& simplex, const Face& face)
{
  if (!face_belongs_to(face, simplex))
    throw ParameterError("face does not belong to the given simplex");
}

// Face quadrature nodes pulled back to the reference simplex.
std::vector<Point> reference_face_nodes(const FaceRule& rule, const Simplex& simplex)
{
  const AffineMap map = affine_map(reference_simplex(simplex.dim()), simplex);
  std::vector<Point> nodes;
  nodes.reserve(rule.nodes.size());
  for (const auto& x : rule.nodes)
    nodes.push_back(map.apply_inverse(x));
  return nodes;
}

Eigen::Map<const Eigen::VectorXd> as_vector(const std::vector<double>& v)
{
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

const Simplex& element_or(const PolyCoeffs& c, const Simplex& fallback)
{
  return c.element() ? *c.element() : fallback;
}

} // namespace

FaceMassMatrix assemble_face_mass(int p, int n, const Simplex& simplex, const Face& face)
{
  check_degrees(p, n);
  check_face(simplex, face);
  const int d = simplex.dim();

  FaceMassMatrix out{.entries = {},
                     .p = p,
                     .n = n,
                     .d = d,
                     .face = face,
                     .basis = enumerate_modes(p, d),
                     .first_deflated = 0,
                     .volume_ratio = simplex.volume() / reference_volume(d)};
  out.first_deflated = out.basis.prefix_size(n);
  const auto rows = static_cast<Eigen::Index>(out.basis.size() - out.first_deflated);
  if (rows == 0)
  {
    out.entries.resize(0, 0);
    return out;
  }

  const FaceRule rule = face_rule(face, 2 * p);
  const Eigen::MatrixXd values = pkd_eval_batch(out.basis, reference_face_nodes(rule, simplex));
  const auto deflated = values.bottomRows(rows);
  const Eigen::VectorXd w = as_vector(rule.weights) / out.volume_ratio;
  out.entries = deflated * w.asDiagonal() * deflated.transpose();
  // exact symmetry
  out.entries = 0.5 * (out.entries + out.entries.transpose()).eval();
  return out;
}

double block_eigenvalue_closed_form(std::span<const int> leading, int p, int n, int d)
{
  check_degrees(p, n);
  if (static_cast<int>(leading.size()) != d - 1)
    throw ParameterError("block key must have d-1 = " + std::to_string(d - 1) + " entries");
  for (int c : leading)
    if (c < 0)
      throw ParameterError("block key entries must be non-negative");
  const int sigma = std::accumulate(leading.begin(), leading.end(), 0);
  if (sigma > p)
    throw ParameterError("block key degree " + std::to_string(sigma) + " exceeds p="
                         + std::to_string(p));
  double total = 0.0;
  for (int t = std::max(0, n + 1 - sigma); t <= p - sigma; ++t)
    total += (2.0 * (sigma + t) + d) / 2.0;
  return total;
}

EigenPair spectral_radius_numeric(const Eigen::MatrixXd& matrix, double tol, int max_iterations)
{
  if (matrix.rows() == 0 || matrix.rows() != matrix.cols())
    throw ParameterError("spectral_radius_numeric needs a nonempty square matrix");
  if (!matrix.allFinite())
    throw NumericError("spectral_radius_numeric: matrix has non-finite entries");

  const auto size = matrix.rows();
  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(size);
  for (Eigen::Index i = 0; i < size; ++i)
    v(i) = normal(rng);
  v.normalize();

  EigenPair result;
  for (int iter = 1; iter <= max_iterations; ++iter)
  {
    const Eigen::VectorXd w = matrix * v;
    const double rho = v.dot(w);
    const double residual = (w - rho * v).norm();
    result = {rho, v, iter, residual};
    const double wnorm = w.norm();
    if (wnorm == 0.0)
    {
      result.rho = 0.0;
      result.residual = 0.0;
      return result;
    }
    if (residual <= tol * std::abs(rho))
      return result;
    v = w / wnorm;
  }
  std::ostringstream msg;
  msg << "power iteration did not converge in " << max_iterations
      << " iterations; final residual " << result.residual << " for rho " << result.rho;
  throw NumericError(msg.str());
}

EigenPair spectral_radius_numeric(const FaceMassMatrix& matrix, double tol, int max_iterations)
{
  return spectral_radius_numeric(matrix.entries, tol, max_iterations);
}

double reference_constant(int p, int n, int d)
{
  check_degrees(p, n);
  if (d < 1)
    throw ParameterError("dimension must be >= 1");
  return static_cast<double>(p - n) * static_cast<double>(p + n + 1 + d) / 2.0;
}

double sharp_constant(int p, int n, const Simplex& simplex, const Face& face)
{
  check_degrees(p, n);
  check_face(simplex, face);
  const int d = simplex.dim();
  return static_cast<double>(p - n) * static_cast<double>(p + n + 1 + d) / d * face.measure
         / simplex.volume();
}

double wh_constant(int p, const Simplex& simplex, const Face& face)
{
  if (p < 0)
    throw ParameterError("polynomial degree p must be non-negative");
  check_face(simplex, face);
  const int d = simplex.dim();
  return static_cast<double>(p + 1) * static_cast<double>(p + d) / d * face.measure
         / simplex.volume();
}

double face_norm_sq(const PolyCoeffs& c, const Face& face)
{
  const Simplex element = c.element() ? *c.element() : reference_simplex(c.dim());
  check_face(element, face);
  const FaceRule rule = face_rule(face, 2 * c.degree());
  const Eigen::MatrixXd values = pkd_eval_batch(c.spec(), reference_face_nodes(rule, element));
  const Eigen::VectorXd u = values.transpose() * c.coeffs();
  return u.cwiseAbs2().dot(as_vector(rule.weights));
}

double element_norm_sq(const PolyCoeffs& c)
{
  const Simplex element = c.element() ? *c.element() : reference_simplex(c.dim());
  const SimplexRule rule = physical_element_rule(element, 2 * c.degree());
  const AffineMap map = affine_map(reference_simplex(c.dim()), element);
  std::vector<Point> ref_nodes;
  ref_nodes.reserve(rule.size());
  for (const auto& x : rule.nodes)
    ref_nodes.push_back(map.apply_inverse(x));
  const Eigen::MatrixXd values = pkd_eval_batch(c.spec(), ref_nodes);
  const Eigen::VectorXd u = values.transpose() * c.coeffs();
  return u.cwiseAbs2().dot(as_vector(rule.weights));
}

SharpConstantReport extremal_polynomial(int p, int n, const Simplex& simplex, const Face& face)
{
  check_degrees(p, n);
  if (n >= p)
    throw ParameterError("extremal polynomial needs n < p (the deflated space is empty)");
  check_face(simplex, face);

  const FaceMassMatrix mass = assemble_face_mass(p, n, simplex, face);
  const EigenPair dominant = spectral_radius_numeric(mass);

  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mass.basis.size()));
  coeffs.tail(dominant.vector.size()) = dominant.vector;
  PolyCoeffs extremal(mass.basis, std::move(coeffs), simplex);

  const double ratio = face_norm_sq(extremal, face) / element_norm_sq(extremal);
  return SharpConstantReport{.p = p,
                             .n = n,
                             .d = simplex.dim(),
                             .face_id = face.opposite_vertex,
                             .closed_form = sharp_constant(p, n, simplex, face),
                             .numeric_rho = dominant.rho,
                             .wh_bound = wh_constant(p, simplex, face),
                             .extremal_coeffs = std::move(extremal),
                             .achieved_ratio = ratio};
}

InequalityCheck verify_inequality(const PolyCoeffs& c, int n, const Simplex& simplex,
                                  const Face& face)
{
  if (c.dim() != simplex.dim())
    throw ParameterError("polynomial dimension " + std::to_string(c.dim())
                         + " does not match simplex dimension "
                         + std::to_string(simplex.dim()));
  const Simplex reference = reference_simplex(c.dim());
  if (!(element_or(c, reference) == simplex))
    throw ParameterError("polynomial is not defined on the given simplex");
  check_degrees(c.degree(), n);
  check_face(simplex, face);

  const PolyCoeffs theta = deflate(c, n);
  InequalityCheck check;
  if (theta.coeffs().isZero(0.0))
    return check;
  check.lhs = face_norm_sq(theta, face);
  check.rhs = sharp_constant(c.degree(), n, simplex, face) * element_norm_sq(theta);
  check.ratio = check.rhs > 0.0 ? check.lhs / check.rhs : 0.0;
  check.holds = check.lhs <= check.rhs * (1.0 + 1e-10);
  return check;
}

RatioScan random_ratio_scan(int p, int n, const Simplex& simplex, const Face& face,
                            std::size_t count, std::uint64_t seed,
                            const std::vector<Eigen::VectorXd>& extra)
{
  check_degrees(p, n);
  check_face(simplex, face);
  if (count < 1)
    throw ParameterError("random_ratio_scan needs count >= 1");

  const int d = simplex.dim();
  BasisSpec basis = enumerate_modes(p, d);
  const auto first = static_cast<Eigen::Index>(basis.prefix_size(n));
  const auto total = static_cast<Eigen::Index>(basis.size());
  const auto rows = total - first;
  RatioScan scan{.max_ratio = 0.0, .argmax = PolyCoeffs::zeros(basis, simplex), .samples = 0};
  if (rows == 0)
  {
    scan.samples = count + extra.size();
    return scan;
  }

  const FaceRule rule = face_rule(face, 2 * p);
  const Eigen::MatrixXd face_values
      = pkd_eval_batch(basis, reference_face_nodes(rule, simplex)).bottomRows(rows).transpose();
  const Eigen::VectorXd weights = as_vector(rule.weights);
  const double volume_ratio = simplex.volume() / reference_volume(d);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd best = Eigen::VectorXd::Zero(rows);

  auto consider = [&](const Eigen::MatrixXd& batch) {
    const Eigen::MatrixXd u = face_values * batch;
    const Eigen::RowVectorXd face_sq = weights.transpose() * u.cwiseAbs2();
    const Eigen::RowVectorXd elem_sq = batch.cwiseAbs2().colwise().sum() * volume_ratio;
    for (Eigen::Index j = 0; j < batch.cols(); ++j)
    {
      ++scan.samples;
      if (elem_sq(j) == 0.0)
        continue;
      const double ratio = face_sq(j) / elem_sq(j);
      if (ratio > scan.max_ratio)
      {
        scan.max_ratio = ratio;
        best = batch.col(j);
      }
    }
  };

  constexpr std::size_t chunk = 512;
  for (std::size_t done = 0; done < count; done += chunk)
  {
    const auto cols = static_cast<Eigen::Index>(std::min(chunk, count - done));
    Eigen::MatrixXd batch(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i)
        batch(i, j) = normal(rng);
    consider(batch);
  }
  for (const auto& full : extra)
  {
    if (full.size() != total)
      throw ParameterError("extra sample has the wrong number of coefficients");
    consider(full.tail(rows));
  }

  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(total);
  coeffs.tail(rows) = best;
  scan.argmax = PolyCoeffs(std::move(basis), std::move(coeffs), simplex);
  return scan;
}

} // namespace itrace
