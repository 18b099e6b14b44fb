#include "itrace/errors.hpp"
#include "itrace/trace_constants.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace itrace;

namespace {

// Closed-form collapsed-face entry: delta(leading) (-1)^{i_d+j_d} sqrt((2|mu|+d)/2) sqrt((2|nu|+d)/2)
double closed_entry(const MultiIndex& mu, const MultiIndex& nu)
{
  const int d = mu.dim();
  if (mu.leading() != nu.leading())
    return 0.0;
  const double sign = ((mu[d - 1] + nu[d - 1]) % 2 == 0) ? 1.0 : -1.0;
  return sign * std::sqrt((2.0 * mu.total_degree() + d) / 2.0)
         * std::sqrt((2.0 * nu.total_degree() + d) / 2.0);
}

Face collapsed(const Simplex& s) { return face(s, collapsed_face_index(s.dim())); }

} // namespace

TEST_CASE("assemble_face_mass examples")
{
  const auto s1 = reference_simplex(1);
  const auto l1 = assemble_face_mass(1, 0, s1, collapsed(s1));
  REQUIRE(l1.size() == 1);
  CHECK(l1.entries(0, 0) == doctest::Approx(1.5));
  CHECK(l1.face.vertices.front()(0) == -1.0);

  const auto s2 = reference_simplex(2);
  const auto l2 = assemble_face_mass(1, 0, s2, collapsed(s2));
  REQUIRE(l2.size() == 2);
  CHECK(l2.mode(0).components() == std::vector<int>{0, 1});
  CHECK(l2.mode(1).components() == std::vector<int>{1, 0});
  CHECK(l2.entries(0, 0) == doctest::Approx(2.0));
  CHECK(l2.entries(1, 1) == doctest::Approx(2.0));
  CHECK(std::abs(l2.entries(0, 1)) <= 1e-14);
  CHECK(l2.block_key(0) == std::vector<int>{0});
  CHECK(l2.block_key(1) == std::vector<int>{1});

  const auto empty = assemble_face_mass(3, 3, s2, collapsed(s2));
  CHECK(empty.size() == 0);
}

TEST_CASE("assemble_face_mass errors")
{
  const auto s2 = reference_simplex(2);
  CHECK_THROWS_AS(assemble_face_mass(2, 3, s2, collapsed(s2)), ParameterError);
  CHECK_THROWS_AS(assemble_face_mass(2, -2, s2, collapsed(s2)), ParameterError);
  std::mt19937_64 rng(2);
  const auto other = oracle::random_simplex(2, rng);
  CHECK_THROWS_AS(assemble_face_mass(2, 0, s2, face(other, 0)), ParameterError);
}

TEST_CASE("collapsed-face entries match the closed form")
{
  for (int d = 1; d <= 3; ++d)
  {
    const auto s = reference_simplex(d);
    for (int p = 0; p <= 8; ++p)
      for (int n = -1; n < p; ++n)
      {
        const auto l = assemble_face_mass(p, n, s, collapsed(s));
        double worst = 0.0;
        for (std::size_t a = 0; a < l.size(); ++a)
          for (std::size_t b = 0; b < l.size(); ++b)
            worst = std::max(worst, std::abs(l.entries(static_cast<Eigen::Index>(a),
                                                       static_cast<Eigen::Index>(b))
                                              - closed_entry(l.mode(a), l.mode(b))));
        CHECK(worst <= 1e-11);
        CHECK(l.entries == l.entries.transpose());
      }
  }
}

TEST_CASE("block eigenvalue closed form")
{
  const std::vector<int> i0{0};
  const std::vector<int> i3{3};
  CHECK(block_eigenvalue_closed_form(i0, 4, 1, 2) == doctest::Approx(12.0));
  CHECK(block_eigenvalue_closed_form(i0, 4, 1, 2) == doctest::Approx((4 - 1) * (4 + 1 + 3) / 2.0));
  // sum_{j=0}^{1} (3+j+1)
  CHECK(block_eigenvalue_closed_form(i3, 4, 1, 2) == doctest::Approx(4.0 + 5.0));
  const std::vector<int> a00{0, 0};
  CHECK(block_eigenvalue_closed_form(a00, 2, 1, 3) == doctest::Approx(3.5));
  CHECK(block_eigenvalue_closed_form(std::vector<int>{}, 3, 0, 1) == doctest::Approx(7.5));

  CHECK_THROWS_AS(block_eigenvalue_closed_form(std::vector<int>{5}, 4, 1, 2), ParameterError);
  CHECK_THROWS_AS(block_eigenvalue_closed_form(std::vector<int>{1, 1}, 4, 1, 2), ParameterError);

  for (int d = 1; d <= 4; ++d)
    for (int p = 0; p <= 10; ++p)
      for (int n = -1; n < p; ++n)
      {
        double best = 0.0;
        for (const auto& mode : enumerate_modes(p, d - 1 > 0 ? d - 1 : 1).modes)
        {
          std::vector<int> key = d == 1 ? std::vector<int>{} : mode.components();
          const int sigma = d == 1 ? 0 : mode.total_degree();
          const double lambda = block_eigenvalue_closed_form(key, p, n, d);
          best = std::max(best, lambda);
          if (sigma <= n + 1)
            CHECK(lambda == doctest::Approx(reference_constant(p, n, d)));
          else if (n >= 0)
            CHECK(lambda < reference_constant(p, n, d));
          if (d == 1)
            break;
        }
        CHECK(best == doctest::Approx(reference_constant(p, n, d)));
      }
}

TEST_CASE("spectral_radius_numeric")
{
  Eigen::MatrixXd one(1, 1);
  one << 1.5;
  const auto r1 = spectral_radius_numeric(one);
  CHECK(r1.rho == doctest::Approx(1.5));
  CHECK(std::abs(r1.vector(0)) == doctest::Approx(1.0));

  const Eigen::Vector2d v(1, 2);
  const auto r2 = spectral_radius_numeric(v * v.transpose());
  CHECK(r2.rho == doctest::Approx(5.0));
  CHECK(std::abs(r2.vector.dot(v / std::sqrt(5.0))) == doctest::Approx(1.0));

  const auto s2 = reference_simplex(2);
  CHECK(spectral_radius_numeric(assemble_face_mass(3, 1, s2, collapsed(s2))).rho
        == doctest::Approx(7.0).epsilon(1e-10));

  CHECK(spectral_radius_numeric(Eigen::MatrixXd::Zero(3, 3)).rho == 0.0);
  CHECK_THROWS_AS(spectral_radius_numeric(Eigen::MatrixXd(0, 0)), ParameterError);
  CHECK_THROWS_AS(spectral_radius_numeric(Eigen::MatrixXd::Zero(2, 3)), ParameterError);

  // slow convergence with a tiny iteration budget
  Eigen::MatrixXd close = Eigen::MatrixXd::Zero(2, 2);
  close(0, 0) = 1.0;
  close(1, 1) = 0.999;
  CHECK_THROWS_AS(spectral_radius_numeric(close, 1e-14, 5), NumericError);
}

TEST_CASE("power iteration agrees with a dense eigensolver")
{
  std::mt19937_64 rng(7);
  for (int d = 1; d <= 3; ++d)
  {
    const auto s = oracle::random_simplex(d, rng);
    for (int k = 0; k <= d; ++k)
      for (int p = 1; p <= 5; ++p)
        for (int n = -1; n < p; ++n)
        {
          const auto l = assemble_face_mass(p, n, s, face(s, k));
          const auto pair = spectral_radius_numeric(l);
          CHECK(pair.rho
                == doctest::Approx(oracle::dense_largest_eigenvalue(l.entries)).epsilon(1e-10));
          CHECK(pair.residual <= 1e-12 * pair.rho);
          CHECK(pair.vector.norm() == doctest::Approx(1.0));
        }
  }
}

TEST_CASE("face mass matrix is positive semi-definite")
{
  std::mt19937_64 rng(8);
  for (int d = 1; d <= 3; ++d)
  {
    const auto s = oracle::random_simplex(d, rng);
    for (int k = 0; k <= d; ++k)
    {
      const auto l = assemble_face_mass(5, 1, s, face(s, k));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l.entries, Eigen::EigenvaluesOnly);
      CHECK(solver.eigenvalues().minCoeff() >= -1e-10);
    }
  }
}

TEST_CASE("constants")
{
  CHECK(reference_constant(4, 4, 2) == 0.0);
  CHECK(reference_constant(2, 0, 3) == 6.0);
  CHECK(reference_constant(1, -1, 1) == 2.0);
  CHECK(reference_constant(3, -1, 2) == 10.0);
  CHECK_THROWS_AS(reference_constant(1, 2, 2), ParameterError);

  const auto s2 = reference_simplex(2);
  CHECK(sharp_constant(2, 0, s2, collapsed(s2)) == doctest::Approx(5.0));
  CHECK(sharp_constant(3, 3, s2, collapsed(s2)) == 0.0);

  auto interval = [](double a, double b) {
    Point pa(1), pb(1);
    pa << a;
    pb << b;
    return Simplex({pa, pb});
  };
  const auto ab = interval(0.25, 3.0);
  for (int p = 0; p <= 5; ++p)
    for (int n = -1; n <= p; ++n)
      for (int k = 0; k <= 1; ++k)
        CHECK(sharp_constant(p, n, ab, face(ab, k))
              == doctest::Approx((p - n) * (p + n + 2.0) / 2.75));

  CHECK(wh_constant(0, s2, collapsed(s2)) == doctest::Approx(1.0));
  const auto s3 = reference_simplex(3);
  REQUIRE(collapsed(s3).measure / s3.volume() == doctest::Approx(1.5));
  CHECK(wh_constant(3, s3, collapsed(s3)) == doctest::Approx(12.0));
  for (int d = 1; d <= 4; ++d)
    for (int p = 0; p <= 8; ++p)
    {
      const auto s = reference_simplex(d);
      CHECK(sharp_constant(p, -1, s, face(s, 0)) == doctest::Approx(wh_constant(p, s, face(s, 0))));
    }
}

TEST_CASE("dominance and monotonicity of the constant product")
{
  for (long d = 1; d <= 6; ++d)
    for (long p = 0; p <= 50; ++p)
    {
      CHECK((p + 1) * (p - 1 + 1 + d) == (p + 1) * (p + d));
      for (long n = 0; n <= p; ++n)
        CHECK((p - n) * (p + n + 1 + d) < (p + 1) * (p + d));
      for (int n = -1; n < p; ++n)
        CHECK(reference_constant(static_cast<int>(p), n + 1, static_cast<int>(d))
              < reference_constant(static_cast<int>(p), n, static_cast<int>(d)));
    }
}

TEST_CASE("extremal polynomials")
{
  const auto s1 = reference_simplex(1);
  const auto r1 = extremal_polynomial(1, 0, s1, collapsed(s1));
  CHECK(r1.extremal_coeffs.coeffs()(0) == 0.0);
  CHECK(std::abs(r1.extremal_coeffs.coeffs()(1)) == doctest::Approx(1.0));
  CHECK(r1.achieved_ratio == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(r1.closed_form == doctest::Approx(1.5));

  const auto s2 = reference_simplex(2);
  const auto r2 = extremal_polynomial(2, 1, s2, collapsed(s2));
  CHECK(r2.achieved_ratio == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(r2.numeric_rho == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(r2.face_id == 2);
  CHECK(r2.wh_bound == doctest::Approx(3.0 * 4.0 / 2.0));

  std::mt19937_64 rng(13);
  for (int d = 1; d <= 3; ++d)
  {
    const auto s = oracle::random_simplex(d, rng);
    for (int k = 0; k <= d; ++k)
      for (int p = 1; p <= 4; ++p)
        for (int n = -1; n < p; ++n)
        {
          const auto r = extremal_polynomial(p, n, s, face(s, k));
          CHECK(r.achieved_ratio <= r.closed_form * (1 + 1e-9));
          CHECK(r.achieved_ratio == doctest::Approx(r.numeric_rho).epsilon(1e-9));
          CHECK(r.achieved_ratio == doctest::Approx(r.closed_form).epsilon(1e-9));
        }
  }

  CHECK_THROWS_AS(extremal_polynomial(2, 2, s2, collapsed(s2)), ParameterError);
}

TEST_CASE("verify_inequality")
{
  const auto s2 = reference_simplex(2);
  const auto spec = enumerate_modes(3, 2);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(spec.size()));
  c(0) = 1.0;
  const auto constant = verify_inequality(PolyCoeffs(spec, c), 0, s2, collapsed(s2));
  CHECK(constant.lhs == 0.0);
  CHECK(constant.rhs == 0.0);
  CHECK(constant.holds);

  const auto ext = extremal_polynomial(3, 1, s2, collapsed(s2));
  const auto tight = verify_inequality(ext.extremal_coeffs, 1, s2, collapsed(s2));
  CHECK(tight.ratio == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(tight.holds);

  std::mt19937_64 rng(19);
  std::normal_distribution<double> g;
  const auto spec5 = enumerate_modes(5, 2);
  for (int trial = 0; trial < 200; ++trial)
  {
    Eigen::VectorXd v(static_cast<Eigen::Index>(spec5.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i)
      v(i) = g(rng);
    const auto check = verify_inequality(PolyCoeffs(spec5, v), 2, s2, face(s2, trial % 3));
    CHECK(check.holds);
    CHECK(check.ratio <= 1.0 + 1e-10);
  }

  const auto s3 = reference_simplex(3);
  CHECK_THROWS_AS(verify_inequality(PolyCoeffs(spec, c), 0, s3, collapsed(s3)), ParameterError);
  const auto other = oracle::random_simplex(2, rng);
  CHECK_THROWS_AS(verify_inequality(PolyCoeffs(spec, c), 0, other, face(other, 0)),
                  ParameterError);
  CHECK_NOTHROW(verify_inequality(PolyCoeffs(spec, c, other), 0, other, face(other, 0)));
}

TEST_CASE("random_ratio_scan")
{
  const auto s2 = reference_simplex(2);
  const Face f = collapsed(s2);
  const auto a = random_ratio_scan(5, 2, s2, f, 1, 99);
  const auto b = random_ratio_scan(5, 2, s2, f, 1, 99);
  CHECK(a.max_ratio == b.max_ratio);
  CHECK(a.argmax.coeffs() == b.argmax.coeffs());
  CHECK(a.samples == 1);

  const auto many = random_ratio_scan(5, 2, s2, f, 10000, 5);
  CHECK(many.samples == 10000);
  CHECK(many.max_ratio <= sharp_constant(5, 2, s2, f) * (1 + 1e-10));
  CHECK(many.max_ratio > 0.0);
  const auto recheck
      = verify_inequality(PolyCoeffs(many.argmax.spec(), many.argmax.coeffs()), 2, s2, f);
  CHECK(recheck.ratio * sharp_constant(5, 2, s2, f) == doctest::Approx(many.max_ratio).epsilon(1e-10));

  const auto ext = extremal_polynomial(5, 2, s2, f);
  const auto with_ext = random_ratio_scan(5, 2, s2, f, 1, 3, {ext.extremal_coeffs.coeffs()});
  CHECK(with_ext.samples == 2);
  CHECK(with_ext.max_ratio == doctest::Approx(sharp_constant(5, 2, s2, f)).epsilon(1e-9));

  const auto trivial = random_ratio_scan(3, 3, s2, f, 10, 1);
  CHECK(trivial.max_ratio == 0.0);

  CHECK_THROWS_AS(random_ratio_scan(3, 1, s2, f, 0, 1), ParameterError);
}

TEST_CASE("face universality on reference faces and affine images")
{
  std::mt19937_64 rng(31);
  for (int d = 1; d <= 3; ++d)
  {
    std::vector<Simplex> elements{reference_simplex(d)};
    for (int t = 0; t < 3; ++t)
      elements.push_back(oracle::random_simplex(d, rng));
    for (const auto& s : elements)
      for (int k = 0; k <= d; ++k)
        for (int p = 0; p <= 4; ++p)
          for (int n = -1; n < p; ++n)
          {
            const Face f = face(s, k);
            const double rho = spectral_radius_numeric(assemble_face_mass(p, n, s, f)).rho;
            // reference constant rescaled by (|F|/|T|) / (|F^_c|/|T^|) with |F^_c|/|T^| = d/2
            const double expected = reference_constant(p, n, d) * (f.measure / s.volume()) / (d / 2.0);
            CHECK(rho == doctest::Approx(expected).epsilon(1e-8));
          }
  }
}
