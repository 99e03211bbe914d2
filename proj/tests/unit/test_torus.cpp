#include <algorithm>
#include <random>

#include "doctest.h"
#include "nilharm/quaternion.hpp"
#include "nilharm/torus.hpp"
#include "support/oracles.hpp"

using namespace nilharm;
using namespace nilharm::torus;
using Eigen::MatrixXcd;
using Eigen::VectorXd;

namespace {

const char* kAlgebras[] = {"su(2)", "su(3)", "su(4)", "so(3)", "so(4)", "so(5)", "so(6)",
                           "sp(1)", "sp(2)", "su(2)+su(2)", "su(3)+su(2)"};

VectorXd random_vec(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = nd(rng);
  return v;
}

}  // namespace

TEST_CASE("quaternion matrices") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    quat::Quat p = random_vec(4, rng), q = random_vec(4, rng);
    CHECK((quat::left(p) * q - quat::mul(p, q)).norm() < 1e-13);
    CHECK((quat::right(q) * p - quat::mul(p, q)).norm() < 1e-13);
    CHECK((quat::chi(quat::mul(p, q)) - quat::chi(p) * quat::chi(q)).norm() < 1e-13);
    CHECK((quat::from_chi(quat::chi(p)) - p).norm() < 1e-15);
    CHECK((quat::chi(quat::conj(p)) - quat::chi(p).adjoint()).norm() < 1e-15);
  }
  CHECK((quat::mul(quat::unit(1), quat::unit(2)) - quat::unit(3)).norm() == 0.0);
}

TEST_CASE("basis is orthonormal and closed under brackets") {
  for (const char* s : kAlgebras) {
    CAPTURE(s);
    RootSystem rs = root_system(s);
    const int d = rs.dim();
    for (int i = 0; i < d; ++i) {
      const auto& b = rs.basis()[i];
      CHECK((b + b.adjoint()).norm() < 1e-15);
      for (int j = 0; j < d; ++j)
        CHECK(rs.inner(b, rs.basis()[j]) == doctest::Approx(i == j ? 1.0 : 0.0).scale(1.0));
    }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        MatrixXcd c = rs.basis()[i] * rs.basis()[j] - rs.basis()[j] * rs.basis()[i];
        CHECK((rs.matrix(rs.coords(c)) - c).norm() < 1e-12);
      }
    for (const auto& t : rs.torus_basis())
      for (const auto& u : rs.torus_basis()) CHECK((t * u - u * t).norm() < 1e-15);
  }
  CHECK(root_system("su(3)").dim() == 8);
  CHECK(root_system("sp(2)").dim() == 10);
  CHECK(root_system("so(5)").dim() == 10);
  CHECK(root_system("sp(2)").rank() == 2);
}

TEST_CASE("roots are the eigenvalues of ad on the complexification") {
  std::mt19937_64 rng(5);
  for (const char* s : kAlgebras) {
    CAPTURE(s);
    RootSystem rs = root_system(s);
    VectorXd h = random_vec(rs.rank(), rng);
    Eigen::EigenSolver<Eigen::MatrixXd> es(rs.ad(rs.torus_matrix(h)));
    std::vector<double> got, want;
    for (int i = 0; i < rs.dim(); ++i) got.push_back(es.eigenvalues()(i).imag());
    for (const auto& r : rs.roots()) want.push_back(r.dot(h));
    for (int i = 0; i < rs.rank(); ++i) want.push_back(0.0);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).scale(1.0));
    CHECK(rs.positive_roots().size() * 2 == rs.roots().size());
  }
}

TEST_CASE("Ad is orthogonal and a homomorphism") {
  std::mt19937_64 rng(6);
  for (const char* s : kAlgebras) {
    RootSystem rs = root_system(s);
    MatrixXcd g = numerics::haar_sample(rs.group(), rng);
    MatrixXcd k = numerics::haar_sample(rs.group(), rng);
    auto a = rs.Ad(g);
    CHECK((a.transpose() * a - Eigen::MatrixXd::Identity(rs.dim(), rs.dim())).norm() < 1e-12);
    CHECK((rs.Ad(g * k) - a * rs.Ad(k)).norm() < 1e-12);
  }
}

TEST_CASE("theta equals the Jacobian of the Weyl map") {
  std::mt19937_64 rng(8);
  for (const char* s : {"su(2)", "su(3)", "so(4)", "so(5)", "sp(2)", "su(2)+su(2)"}) {
    CAPTURE(s);
    RootSystem rs = root_system(s);
    for (int t = 0; t < 5; ++t) {
      VectorXd h = random_vec(rs.rank(), rng);
      MatrixXcd g0 = numerics::haar_sample(rs.group(), rng);
      double fd = oracle::weyl_jacobian_fd(rs, h, g0);
      CHECK(theta(rs, h) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
  // su(2): H = t diag(i,-i) has roots +-2t
  RootSystem su2 = root_system("su(2)");
  CHECK(theta(su2, VectorXd::Constant(1, 1.5)) == doctest::Approx(9.0));
  CHECK(theta(su2, VectorXd::Zero(1)) == 0.0);
  CHECK_THROWS_AS(theta(su2, VectorXd::Zero(2)), std::invalid_argument);
}

TEST_CASE("to_chamber conjugates into the closed chamber") {
  std::mt19937_64 rng(9);
  for (const char* s : kAlgebras) {
    CAPTURE(s);
    RootSystem rs = root_system(s);
    for (int t = 0; t < 10; ++t) {
      MatrixXcd x = rs.matrix(random_vec(rs.dim(), rng));
      ChamberPoint cp = to_chamber(rs, x);
      const int n = rs.matrix_dim();
      CHECK((cp.g.adjoint() * cp.g - MatrixXcd::Identity(n, n)).norm() < 1e-10);
      CHECK((cp.g * x * cp.g.adjoint() - rs.torus_matrix(cp.h)).norm() < 1e-9);
      CHECK(rs.in_chamber(cp.h, 1e-10));
      // g lies in the group: Ad(g) preserves the algebra, and the group conditions
      CHECK((rs.matrix(rs.coords(cp.g * rs.basis()[0] * cp.g.adjoint())) -
             cp.g * rs.basis()[0] * cp.g.adjoint()).norm() < 1e-10);
    }
  }
  // degenerate element of so(4) and sp(2)
  RootSystem so4 = root_system("so(4)");
  VectorXd h0(2);
  h0 << 1.0, 1.0;
  MatrixXcd g = numerics::haar_sample(so4.group(), rng);
  ChamberPoint cp = to_chamber(so4, g * so4.torus_matrix(h0) * g.adjoint());
  CHECK(std::abs(cp.g.determinant() - 1.0) < 1e-10);
  CHECK(cp.h(0) == doctest::Approx(1.0));
  CHECK(std::abs(cp.h(1)) == doctest::Approx(1.0));
  RootSystem sp2 = root_system("sp(2)");
  h0 << 0.7, 0.0;
  MatrixXcd u = numerics::haar_sample(sp2.group(), rng);
  cp = to_chamber(sp2, u * sp2.torus_matrix(h0) * u.adjoint());
  CHECK(cp.h(0) == doctest::Approx(0.7));
  CHECK(cp.h(1) == doctest::Approx(0.0).scale(1.0));
  auto om = numerics::quaternionic_structure(2);
  CHECK((cp.g * om - om * cp.g.conjugate()).norm() < 1e-10);
}

TEST_CASE("Weyl dimension formulas") {
  CHECK(dim_sp(1, {3}) == 4);
  CHECK(dim_sp(2, {1}) == 4);
  CHECK(dim_sp(2, {1, 1}) == 5);
  CHECK(dim_sp(2, {2}) == 10);
  CHECK(dim_sp(1, {1, 1}) == 0);
  CHECK(dim_sp(3, {1, 1}) == 14);
  CHECK(dim_gl(3, {1}) == 3);
  CHECK(dim_gl(3, {2, 1}) == 8);
  CHECK(dim_gl(2, {2, 1}) == 2);
  CHECK(dim_gl(1, {1, 1}) == 0);
  // Sym^r(C^k) has dimension binom(k+r-1, r)
  CHECK(dim_gl(4, {3}) == 20);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(root_system("g2"), std::invalid_argument);
  CHECK_THROWS_AS(root_system("su(1)"), std::invalid_argument);
  CHECK_THROWS_AS(root_system("su(2)+"), std::invalid_argument);
}
