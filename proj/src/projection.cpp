#include "itrace/projection.hpp"

#include "itrace/errors.hpp"

#include <cmath>
#include <sstream>

namespace itrace {

PolyCoeffs::PolyCoeffs(BasisSpec spec, Eigen::VectorXd coeffs, std::optional<Simplex> element)
  : spec_(std::move(spec)), coeffs_(std::move(coeffs)), element_(std::move(element))
{
  if (static_cast<std::size_t>(coeffs_.size()) != spec_.size())
    throw ParameterError("coefficient vector has " + std::to_string(coeffs_.size())
                         + " entries; the degree-" + std::to_string(spec_.degree)
                         + " basis in dimension " + std::to_string(spec_.dim) + " has "
                         + std::to_string(spec_.size()) + " modes");
  if (element_ && element_->dim() != spec_.dim)
    throw ParameterError("element dimension does not match basis dimension");
}

PolyCoeffs PolyCoeffs::zeros(BasisSpec spec, std::optional<Simplex> element)
{
  const auto n = static_cast<Eigen::Index>(spec.size());
  return PolyCoeffs(std::move(spec), Eigen::VectorXd::Zero(n), std::move(element));
}

double PolyCoeffs::volume_ratio() const
{
  if (!element_)
    return 1.0;
  return element_->volume() / reference_volume(spec_.dim);
}

Point PolyCoeffs::pull_back(const Point& x) const
{
  if (!element_)
    return x;
  return affine_map(reference_simplex(spec_.dim), *element_).apply_inverse(x);
}

PolyCoeffs expand(const ScalarField& f, const BasisSpec& spec, std::optional<Simplex> element)
{
  const SimplexRule rule = simplex_rule(spec.dim, 2 * spec.degree);
  std::optional<AffineMap> map;
  if (element)
    map = affine_map(reference_simplex(spec.dim), *element);

  Eigen::VectorXd fw(static_cast<Eigen::Index>(rule.size()));
  for (std::size_t i = 0; i < rule.size(); ++i)
  {
    const double value = f(map ? map->apply(rule.nodes[i]) : rule.nodes[i]);
    if (!std::isfinite(value))
    {
      std::ostringstream msg;
      msg << "expand: function is not finite at quadrature node " << i;
      throw NumericError(msg.str());
    }
    fw(static_cast<Eigen::Index>(i)) = value * rule.weights[i];
  }
  const Eigen::MatrixXd basis = pkd_eval_batch(spec, rule.nodes);
  return PolyCoeffs(spec, basis * fw, std::move(element));
}

namespace {

void check_projection_degree(const PolyCoeffs& c, int n)
{
  if (n < -1)
    throw ParameterError("projection degree must be >= -1");
  if (n > c.degree())
    throw ParameterError("projection degree " + std::to_string(n)
                         + " exceeds polynomial degree " + std::to_string(c.degree()));
}

} // namespace

PolyCoeffs project(const PolyCoeffs& c, int n)
{
  check_projection_degree(c, n);
  Eigen::VectorXd out = c.coeffs();
  const auto keep = static_cast<Eigen::Index>(c.spec().prefix_size(n));
  out.tail(out.size() - keep).setZero();
  return PolyCoeffs(c.spec(), std::move(out), c.element());
}

PolyCoeffs deflate(const PolyCoeffs& c, int n)
{
  check_projection_degree(c, n);
  Eigen::VectorXd out = c.coeffs();
  const auto drop = static_cast<Eigen::Index>(c.spec().prefix_size(n));
  out.head(drop).setZero();
  return PolyCoeffs(c.spec(), std::move(out), c.element());
}

double l2_norm_sq(const PolyCoeffs& c) { return c.coeffs().squaredNorm() * c.volume_ratio(); }

double eval(const PolyCoeffs& c, const Point& x)
{
  if (x.size() != c.dim())
    throw ParameterError("eval: point dimension does not match the polynomial");
  const Point ref = c.pull_back(x);
  if (!in_reference_simplex(ref, 1e-12))
    throw DomainError("eval: point lies outside the element");
  double total = 0.0;
  for (std::size_t mu = 0; mu < c.spec().size(); ++mu)
  {
    const double coeff = c.coeffs()(static_cast<Eigen::Index>(mu));
    if (coeff != 0.0)
      total += coeff * pkd_eval(c.spec().modes[mu], ref);
  }
  return total;
}

} // namespace itrace
