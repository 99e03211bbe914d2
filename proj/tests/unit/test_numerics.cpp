#include <cmath>
#include <cstdlib>
#include <numbers>

#include "doctest.h"
#include "nilharm/numerics.hpp"

using namespace nilharm;
using namespace nilharm::numerics;

namespace {

// Explicit sum: L_k^a(x) = sum_i (-1)^i binom(k+a, k-i) x^i / i!
double laguerre_sum(int k, double a, double x) {
  double s = 0.0;
  for (int i = 0; i <= k; ++i) {
    double binom = std::tgamma(k + a + 1) / (std::tgamma(k - i + 1) * std::tgamma(a + i + 1));
    s += (i % 2 ? -1.0 : 1.0) * binom * std::pow(x, i) / std::tgamma(i + 1);
  }
  return s;
}

}  // namespace

TEST_CASE("laguerre recurrence matches the explicit sum") {
  for (double a : {0.0, 1.0, 2.0, 0.5, 5.0})
    for (int k = 0; k <= 8; ++k)
      for (double x : {0.0, 0.3, 1.7, 4.0, 9.5}) {
        double ref = laguerre_sum(k, a, x);
        CHECK(laguerre(k, a, x) == doctest::Approx(ref).epsilon(1e-11));
      }
  CHECK(laguerre(3, 0.0, 2.0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
  CHECK(laguerre(2, 1.0, 0.0) == doctest::Approx(3.0));
  std::vector<double> all(7);
  laguerre_all(6, 2.0, 1.3, all);
  for (int k = 0; k <= 6; ++k) CHECK(all[k] == doctest::Approx(laguerre(k, 2.0, 1.3)));
  CHECK_THROWS_AS(laguerre(-1, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(laguerre(2, -1.0, 1.0), std::domain_error);
}

TEST_CASE("laguerre orthogonality under x^a e^-x") {
  Rule1D r = rule_on(Rule::GaussLegendre, 200, 0.0, 80.0);
  for (double a : {0.0, 1.0, 2.0})
    for (int i = 0; i <= 5; ++i)
      for (int j = 0; j <= 5; ++j) {
        double s = 0.0;
        for (std::size_t q = 0; q < r.x.size(); ++q)
          s += r.w[q] * laguerre(i, a, r.x[q]) * laguerre(j, a, r.x[q]) *
               std::pow(r.x[q], a) * std::exp(-r.x[q]);
        double ref = i == j ? std::tgamma(i + a + 1) / std::tgamma(i + 1) : 0.0;
        CHECK(s == doctest::Approx(ref).epsilon(1e-10).scale(1.0));
      }
}

TEST_CASE("sphere character against a spherical average") {
  // <exp(i a xi_3)> over S^2 with xi_3 = cos(theta) uniform on [-1,1]
  Rule1D r = rule_on(Rule::GaussLegendre, 64, -1.0, 1.0);
  for (double a : {0.0, 1e-6, 0.5, 1.0, 3.7, 12.0}) {
    double s = 0.0;
    for (std::size_t q = 0; q < r.x.size(); ++q) s += 0.5 * r.w[q] * std::cos(a * r.x[q]);
    CHECK(sphere_character(a) == doctest::Approx(s).epsilon(1e-12));
  }
  CHECK(sphere_character(0.0) == 1.0);
}

TEST_CASE("gauss-legendre exactness") {
  for (int n : {1, 2, 5, 16, 33}) {
    Rule1D r = gauss_legendre(n);
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.w[i] * std::pow(r.x[i], deg);
      double ref = deg % 2 ? 0.0 : 2.0 / (deg + 1);
      CHECK(s == doctest::Approx(ref).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("tensor quadrature of a Gaussian") {
  for (int d = 1; d <= 4; ++d) {
    auto spec = QuadratureSpec::box(d, gaussian_half_width(1.0), 40);
    cplx v = grid_quadrature(
        [](std::span<const double> x) {
          double r2 = 0;
          for (double t : x) r2 += t * t;
          return cplx(std::exp(-r2));
        },
        spec);
    CHECK(v.real() == doctest::Approx(std::pow(std::numbers::pi, d / 2.0)).epsilon(1e-12));
  }
  auto trap = QuadratureSpec::box(2, 7.0, 81, Rule::Trapezoid);
  cplx v = grid_quadrature([](std::span<const double> x) { return cplx(std::exp(-x[0] * x[0] - x[1] * x[1])); }, trap);
  CHECK(v.real() == doctest::Approx(std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("parallel quadrature reproduces the serial reference bitwise") {
  auto spec = QuadratureSpec::box(3, 4.0, 24);
  Integrand f = [](std::span<const double> x) {
    return std::polar(std::exp(-x[0] * x[0] - 0.5 * x[1] * x[1] - 2 * x[2] * x[2]), x[0] * x[1] + x[2]);
  };
  cplx a = grid_quadrature(f, spec), b = grid_quadrature_serial(f, spec);
  CHECK(a.real() == b.real());
  CHECK(a.imag() == b.imag());
}

TEST_CASE("budget guard") {
  setenv("NILHARM_BUDGET", "1000", 1);
  auto spec = QuadratureSpec::box(3, 1.0, 11);
  CHECK_THROWS_AS(grid_quadrature([](std::span<const double>) { return cplx(1.0); }, spec),
                  BudgetExceeded);
  unsetenv("NILHARM_BUDGET");
  CHECK_NOTHROW(grid_quadrature([](std::span<const double>) { return cplx(1.0); }, spec));
}

TEST_CASE("haar samples lie in the group") {
  std::mt19937_64 rng(7);
  for (int n : {2, 3, 5}) {
    auto o = haar_sample(GroupSpec::so(n), rng);
    CHECK((o.adjoint() * o - Eigen::MatrixXcd::Identity(n, n)).norm() < 1e-12);
    CHECK(o.imag().norm() == 0.0);
    CHECK(std::abs(o.determinant() - 1.0) < 1e-12);
    auto s = haar_sample(GroupSpec::su(n), rng);
    CHECK((s.adjoint() * s - Eigen::MatrixXcd::Identity(n, n)).norm() < 1e-12);
    CHECK(std::abs(s.determinant() - 1.0) < 1e-12);
  }
  for (int n : {1, 2, 3}) {
    auto u = haar_sample(GroupSpec::sp(n), rng);
    auto om = quaternionic_structure(n);
    CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(2 * n, 2 * n)).norm() < 1e-12);
    CHECK((u * om - om * u.conjugate()).norm() < 1e-12);
    CHECK((u.transpose() * om * u - om).norm() < 1e-12);
  }
  auto p = haar_sample(GroupSpec::product({GroupSpec::su(3), GroupSpec::sp(1)}), rng);
  CHECK(p.rows() == 5);
  CHECK(p.block(0, 3, 3, 2).norm() == 0.0);
}

TEST_CASE("haar moments") {
  // For an irreducible defining representation E|tr g|^2 = 1.
  const std::size_t N = 40000;
  for (auto g : {GroupSpec::so(3), GroupSpec::su(2), GroupSpec::su(4), GroupSpec::u(3),
                 GroupSpec::sp(1), GroupSpec::sp(2)}) {
    auto est = mc_integrate([](const Eigen::MatrixXcd& m) { return cplx(std::norm(m.trace())); },
                            g, N, 11);
    CHECK(std::abs(est.mean.real() - 1.0) < 5 * est.std_error);
    auto lin = mc_integrate([](const Eigen::MatrixXcd& m) { return m.trace(); }, g, N, 12);
    CHECK(std::abs(lin.mean) < 5 * lin.std_error + 1e-15);
  }
  // First column of SO(3) is uniform on S^2: E[x_3^2] = 1/3.
  auto col = mc_integrate([](const Eigen::MatrixXcd& m) { return cplx(std::norm(m(2, 0))); },
                          GroupSpec::so(3), N, 13);
  CHECK(std::abs(col.mean.real() - 1.0 / 3.0) < 5 * col.std_error);
}

TEST_CASE("monte carlo: parallel equals serial, error scaling") {
  HaarIntegrand f = [](const Eigen::MatrixXcd& m) { return std::exp(cplx(0, 1) * m(0, 0).real()); };
  auto a = mc_integrate(f, GroupSpec::su(2), 5000, 99);
  auto b = mc_integrate_serial(f, GroupSpec::su(2), 5000, 99);
  CHECK(a.mean.real() == b.mean.real());
  CHECK(a.mean.imag() == b.mean.imag());
  CHECK(a.std_error == b.std_error);
  CHECK(a.samples == 5000);
  // quadrupling the sample count halves the standard error
  auto c = mc_integrate(f, GroupSpec::su(2), 20000, 100);
  CHECK(c.std_error / a.std_error == doctest::Approx(0.5).epsilon(0.2));
  auto d = mc_integrate(f, GroupSpec::su(2), 10000, 101);
  CHECK(d.std_error / a.std_error == doctest::Approx(std::sqrt(0.5)).epsilon(0.2));
  CHECK_THROWS_AS(mc_integrate(f, GroupSpec::su(2), 0, 1), std::invalid_argument);
}
