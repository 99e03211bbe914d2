#include <random>

#include "doctest.h"
#include "nilharm/plancherel.hpp"
#include "nilharm/torus.hpp"

using namespace nilharm;
using namespace nilharm::plancherel;
using algebra::Case;
using algebra::CaseSpec;
using algebra::NPoint;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {

CaseSpec mk(Case c, int n = 0, int k = 0) {
  CaseSpec s;
  s.kind = c;
  s.n = n;
  s.k = k;
  return s;
}

NPoint h1(double t, double x, double y) {
  NPoint p{VectorXd::Constant(1, t), VectorXd(2)};
  p.v << x, y;
  return p;
}

HeisenbergFunction gaussian(double a, double b) {
  return [a, b](double t, cplx v) { return cplx(std::exp(-a * t * t - b * std::norm(v))); };
}

}  // namespace

TEST_CASE("plancherel density") {
  for (int n : {1, 2, 3}) {
    auto a = algebra::build_case(mk(Case::VII, n));
    for (double lam : {-1.5, 0.4, 2.0}) {
      auto d = density(a, VectorXd(0), VectorXd::Constant(1, lam));
      CHECK(d.value == doctest::Approx(std::pow(std::abs(lam), n)).epsilon(1e-12));
      CHECK(d.theta == 1.0);
    }
    CHECK(density(a, VectorXd(0), VectorXd::Zero(1)).value == 0.0);
  }
  auto c1 = algebra::build_case(mk(Case::I, 1));
  for (double th : {0.3, 1.0, 2.5}) {
    auto d = density(c1, VectorXd::Constant(1, th), VectorXd(0));
    CHECK(d.theta == doctest::Approx(4 * th * th));
    CHECK(d.pfaffian == doctest::Approx(th * th));
    CHECK(d.value == doctest::Approx(4 * std::pow(th, 4)));
  }
  CHECK(density(c1, VectorXd::Zero(1), VectorXd(0)).value == 0.0);
  // case VIII, n > 0: purely central functionals carry no mass
  auto v8 = algebra::build_case(mk(Case::VIII, 1, 2));
  auto d = density(v8, VectorXd::Zero(1), VectorXd::Constant(1, 0.7));
  CHECK(d.value == 0.0);
  CHECK(d.verdict == forms::Verdict::Degenerate);
  CHECK(density(v8, VectorXd::Constant(1, 0.4), VectorXd::Constant(1, 0.7)).value > 0.0);
  // II never has mass
  auto two = algebra::build_case(mk(Case::II, 1));
  CHECK(density(two, VectorXd::Constant(1, 1.0), VectorXd(0)).value == 0.0);
}

TEST_CASE("group convolution on H_1") {
  auto a = algebra::build_case(mk(Case::VII, 1));
  auto q = numerics::QuadratureSpec::box(3, 6.0, 48);
  auto gauss = [](double p, double r) {
    return PointFunction([p, r](const NPoint& y) { return cplx(std::exp(-p * y.z.squaredNorm() - r * y.v.squaredNorm())); });
  };
  // at the origin the twist disappears: int f(y) g(y^-1) dy
  auto out = group_convolution(a, gauss(1.0, 1.0), gauss(0.5, 2.0), q, {h1(0, 0, 0)});
  CHECK(std::abs(out[0] - std::sqrt(M_PI / 1.5) * M_PI / 3.0) < 1e-7);
  // approximate identity
  const double eps = 0.08;
  PointFunction delta = [eps](const NPoint& y) {
    return cplx(std::exp(-y.z.squaredNorm() / (eps * eps) - y.v.squaredNorm() / (eps * eps)) /
                std::pow(std::sqrt(M_PI) * eps, 3));
  };
  PointFunction f = [](const NPoint& y) { return cplx(std::exp(-y.z(0) * y.z(0) - std::pow(y.v(0) - 0.3, 2) - y.v(1) * y.v(1))); };
  for (auto x : {h1(0.2, 0.1, -0.3), h1(-0.5, 0.4, 0.2)}) {
    // the mass of delta(y^-1 x) sits near y = x
    auto fine = numerics::QuadratureSpec::box(3, 0.6, 40);
    for (int d = 0; d < 3; ++d) {
      double c = d == 0 ? x.z(0) : x.v(d - 1);
      fine.lower[d] += c;
      fine.upper[d] += c;
    }
    auto c = group_convolution(a, f, delta, fine, {x})[0];
    CHECK(std::abs(c - f(x)) < 1e-2);
  }
  // equivariance under the U(1) action on V
  std::mt19937_64 rng(1);
  auto k = a.sample_k(rng);
  PointFunction g = gauss(0.7, 0.9);
  PointFunction fk = [&](const NPoint& y) { return f({k.g_part * y.z, k.V_part * y.v}); };
  NPoint x = h1(0.3, -0.2, 0.5);
  auto lhs = group_convolution(a, fk, g, q, {x})[0];
  auto rhs = group_convolution(a, f, g, q, {{k.g_part * x.z, k.V_part * x.v}})[0];
  CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("Heisenberg inversion report") {
  std::vector<NPoint> probes = {h1(0, 0, 0), h1(0.5, 0.3, -0.2), h1(-0.4, 0.1, 0.6)};
  InversionTruncation small;
  small.w_nodes = 32;
  small.s_nodes = 24;
  small.lambda_nodes = 16;
  auto zero = heisenberg_inversion_check([](double, cplx) { return cplx(0.0); }, probes, small);
  for (cplx s : zero.sums) CHECK(s == cplx(0.0));
  auto par = heisenberg_inversion_check(gaussian(1, 1), probes, small);
  auto ser = heisenberg_inversion_check_serial(gaussian(1, 1), probes, small);
  for (std::size_t p = 0; p < probes.size(); ++p) CHECK(par.sums[p] == ser.sums[p]);
  CHECK(par.rel_error[0] < 1e-14);
  // error falls with J
  double prev = 1e9;
  for (int J : {5, 10, 20}) {
    InversionTruncation tr;
    tr.J = J;
    tr.w_nodes = 48;
    double e = heisenberg_inversion_check(gaussian(1, 1), probes, tr).max_rel_error();
    CHECK(e < prev);
    prev = e;
  }
  // the fitted constant heads for 1/(4 pi^2)
  InversionTruncation tr;
  tr.w_nodes = 48;
  auto r = heisenberg_inversion_check(gaussian(1, 1), probes, tr);
  CHECK(std::abs(r.fitted_c - 1 / (4 * M_PI * M_PI)) < 0.1 / (4 * M_PI * M_PI));
  CHECK_THROWS_AS(heisenberg_inversion_check(gaussian(1, 1), {NPoint{VectorXd::Zero(2), VectorXd::Zero(2)}}),
                  std::invalid_argument);
}

TEST_CASE("Laguerre projections and coefficient orthogonality") {
  std::vector<VectorXcd> pts = {VectorXcd::Zero(1), VectorXcd::Constant(1, cplx(0.4, 1.1)),
                                VectorXcd::Constant(1, cplx(-1.3, 0.2))};
  for (double lam : {1.0, 2.0}) {
    auto q = numerics::QuadratureSpec::box(2, numerics::gaussian_half_width(lam / 8, 1e-20), 80);
    auto off = projection_check(lam, 0, 2, q, pts);
    CHECK(off.max_abs < 1e-8);
    auto on = projection_check(lam, 1, 1, q, pts);
    CHECK(on.c_prime == doctest::Approx(2 * M_PI / lam).epsilon(1e-10));
    CHECK(on.max_rel_residual < 1e-8);
  }
  auto q = numerics::QuadratureSpec::box(2, 12.0, 80);
  auto o = coefficient_orthogonality(1.0, 1.5, 3, q);
  CHECK(o.fitted_c == doctest::Approx(2 * M_PI).epsilon(1e-12));
  CHECK(o.residual < 1e-10);
  // the cross-frequency integral of constants is 4 pi / (lam + lam1), not 0
  CHECK(o.cross_max == doctest::Approx(4 * M_PI / 2.5).epsilon(1e-10));
}

TEST_CASE("matrix-coefficient expansion of f * e(h, h)") {
  auto q = numerics::QuadratureSpec::box(3, 6.0, 24);
  for (int alpha : {0, 2}) {
    auto r = formula1_check(gaussian(1.0, 0.8), 1.0, alpha, 12, q, {h1(0, 0, 0), h1(0.3, 0.5, -0.4)});
    CHECK(r.max_abs_error < 1e-8);
    CHECK(std::abs(r.lhs[0]) > 0.1);
  }
}

TEST_CASE("case I inversion probe") {
  CaseIProbeSpec s;
  s.theta_nodes = 32;
  s.r_nodes = 32;
  s.samples = 4096;
  s.seed = 3;
  auto r = general_inversion_probe(s);
  CHECK(std::abs(r.ratio - r.deterministic_ratio) < 3 * r.ratio_error);
  s.samples = 4 * 4096;
  auto r4 = general_inversion_probe(s);
  CHECK(r4.ratio_error / r.ratio_error == doctest::Approx(0.5).epsilon(0.2));
  // truncation is already small at J = 30: the two widths agree deterministically
  CaseIProbeSpec base;
  base.samples = 1024;
  CaseIProbeSpec w = base;
  w.a = 2.0;
  w.b = 0.5;
  s = base;
  double d1 = general_inversion_probe(s).deterministic_ratio, d2 = general_inversion_probe(w).deterministic_ratio;
  CHECK(std::abs(d1 - d2) / d1 < 1e-3);
}
