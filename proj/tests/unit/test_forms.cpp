#include <random>

#include "doctest.h"
#include "nilharm/forms.hpp"
#include "support/oracles.hpp"

using namespace nilharm;
using namespace nilharm::algebra;
using namespace nilharm::forms;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

CaseSpec mk(Case c, int n = 0, int k = 0, int k1 = 0, int k2 = 0, int m = 0) {
  CaseSpec s;
  s.kind = c;
  s.n = n;
  s.k = k;
  s.k1 = k1;
  s.k2 = k2;
  s.m = m;
  return s;
}

VectorXd rnd(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = nd(rng);
  return v;
}

MatrixXd random_skew(int d, std::mt19937_64& rng) {
  MatrixXd a(d, d);
  for (int j = 0; j < d; ++j) a.col(j) = rnd(d, rng);
  return a - a.transpose();
}

std::vector<CaseSpec> weighted_cases() {
  return {mk(Case::I, 1),   mk(Case::I, 2),         mk(Case::III, 0, 0, 1, 1), mk(Case::III, 0, 0, 0, 2),
          mk(Case::IV, 1),  mk(Case::V, 3),         mk(Case::V, 4),            mk(Case::VI, 2),
          mk(Case::VI, 4),  mk(Case::VI, 6),        mk(Case::VII, 1),          mk(Case::VII, 3),
          mk(Case::VIII, 0, 1), mk(Case::VIII, 1, 2), mk(Case::IX, 3),         mk(Case::IX, 4),
          mk(Case::X, 0, 1, 0, 0, 3), mk(Case::X, 1, 1, 0, 0, 3)};
}

}  // namespace

TEST_CASE("skew form examples") {
  auto h = build_case(mk(Case::VII, 2));
  VectorXd t(1);
  t << 1.7;
  MatrixXd m = skew_form(h, functional(h, t));
  for (int i = 0; i < 2; ++i) {
    CHECK(m(2 * i, 2 * i + 1) == doctest::Approx(1.7));
    CHECK(m(2 * i + 1, 2 * i) == doctest::Approx(-1.7));
  }
  CHECK(m.cwiseAbs().sum() == doctest::Approx(4 * 1.7));
  CHECK(skew_form(h, functional(h, VectorXd::Zero(1))).norm() == 0.0);
  auto so3 = build_case(mk(Case::VI, 3));
  std::mt19937_64 rng(1);
  MatrixXd b = skew_form(so3, functional(so3, rnd(3, rng)));
  CHECK(std::abs(b.determinant()) < 1e-14);
  CHECK((b + b.transpose()).norm() < 1e-14);
  // entries are <[e_i, e_j], X>
  auto a = build_case(mk(Case::IV, 1));
  VectorXd x = rnd(a.dim_g(), rng);
  MatrixXd s = skew_form(a, functional(a, x));
  for (int i = 0; i < a.dim_V(); ++i)
    for (int j = 0; j < a.dim_V(); ++j)
      CHECK(s(i, j) == doctest::Approx(bracket_of(a, VectorXd::Unit(8, i), VectorXd::Unit(8, j)).dot(x)));
  CHECK_THROWS_AS(functional(a, VectorXd::Zero(3)), std::invalid_argument);
}

TEST_CASE("pfaffian against the determinant") {
  std::mt19937_64 rng(2);
  for (int n = 1; n <= 4; ++n) {
    MatrixXd j = MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
      j(2 * i, 2 * i + 1) = 1;
      j(2 * i + 1, 2 * i) = -1;
    }
    CHECK(pfaffian_abs(j) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pfaffian_abs(-2.5 * j) == doctest::Approx(std::pow(2.5, n)).epsilon(1e-13));
  }
  for (int d = 2; d <= 12; d += 2)
    for (int t = 0; t < 5; ++t) {
      MatrixXd m = random_skew(d, rng);
      double p = pfaffian_abs(m);
      CHECK(p == doctest::Approx(oracle::pfaffian_abs_lu(m)).epsilon(1e-10));
      CHECK(p * p == doctest::Approx(m.determinant()).epsilon(1e-9));
    }
  CHECK(pfaffian_abs(random_skew(5, rng)) == 0.0);
  CHECK(pfaffian_abs(MatrixXd::Zero(4, 4)) == 0.0);
}

TEST_CASE("Moore-Wolf classification") {
  std::mt19937_64 rng(3);
  auto h = build_case(mk(Case::VII, 2));
  CHECK(classify(h, functional(h, VectorXd::Constant(1, 0.3))).verdict == Verdict::SquareIntegrable);
  CHECK(classify(h, functional(h, VectorXd::Zero(1))).kernel_dim == 4);
  for (auto s : {mk(Case::II, 0), mk(Case::II, 2), mk(Case::VI, 3), mk(Case::VI, 5)}) {
    auto a = build_case(s);
    for (int t = 0; t < 5; ++t) {
      auto r = classify(a, functional(a, rnd(a.dim_g(), rng)));
      CHECK(r.verdict == Verdict::Degenerate);
      CHECK(r.kernel_dim >= 1);
    }
  }
  for (const auto& s : weighted_cases()) {
    CAPTURE(s.label());
    CHECK(classify_generic(build_case(s)).verdict == Verdict::SquareIntegrable);
  }
  // case VIII, n > 0: purely central functionals kill the H^n block
  auto v8 = build_case(mk(Case::VIII, 2, 1));
  auto r = classify(v8, functional(v8, VectorXd::Zero(1), VectorXd::Constant(1, 1.3)));
  CHECK(r.verdict == Verdict::Degenerate);
  CHECK(r.kernel_dim == 8);
  // scale invariance
  for (const auto& s : weighted_cases()) {
    auto a = build_case(s);
    VectorXd x = rnd(a.dim_g(), rng);
    for (double c : {-3.0, 1e-3, 7.0})
      CHECK(classify(a, functional(a, c * x)).verdict == classify(a, functional(a, x)).verdict);
  }
}

TEST_CASE("Ad-invariance and the conjugation identity") {
  std::mt19937_64 rng(4);
  for (const auto& s : weighted_cases()) {
    CAPTURE(s.label());
    auto a = build_case(s);
    if (!a.gprime_group()) continue;
    VectorXd x = rnd(a.dim_g(), rng);
    double p0 = pfaffian_abs(skew_form(a, functional(a, x)));
    for (int t = 0; t < 20; ++t) {
      auto k = a.gprime_automorphism(numerics::haar_sample(*a.gprime_group(), rng));
      double p = pfaffian_abs(skew_form(a, functional(a, k.g_part * x)));
      CHECK(std::abs(p - p0) / p0 < 1e-9);
      VectorXd u = rnd(a.dim_V(), rng), v = rnd(a.dim_V(), rng);
      MatrixXd bg = skew_form(a, functional(a, k.g_part * x));
      MatrixXd b = skew_form(a, functional(a, x));
      CHECK(std::abs(u.dot(bg * v) - (k.V_part.transpose() * u).dot(b * (k.V_part.transpose() * v))) < 1e-10);
    }
  }
}

TEST_CASE("weight product equals the numeric pfaffian") {
  std::mt19937_64 rng(5);
  for (const auto& s : weighted_cases()) {
    CAPTURE(s.label());
    auto a = build_case(s);
    for (int t = 0; t < 50; ++t) {
      VectorXd h = rnd(a.rank(), rng), z = rnd(a.dim_c(), rng);
      double w = pfaffian_via_weights(a, h, z);
      double p = pfaffian_abs(skew_form(a, functional(a, h, z)));
      CHECK(w == doctest::Approx(p).epsilon(1e-10));
    }
  }
  // case VII: |t|^n ; case I n=1 at H = theta diag(i,-i): theta^2
  CHECK(pfaffian_via_weights(mk(Case::VII, 3), VectorXd::Zero(0), VectorXd::Constant(1, -2.0)) ==
        doctest::Approx(8.0));
  CHECK(pfaffian_via_weights(mk(Case::I, 1), VectorXd::Constant(1, 1.5), VectorXd::Zero(0)) ==
        doctest::Approx(2.25));
  // case IX, purely central: |t|^n
  CHECK(pfaffian_via_weights(mk(Case::IX, 3), VectorXd::Zero(2), VectorXd::Constant(1, 0.5)) ==
        doctest::Approx(0.125));
  CHECK_THROWS_AS(pfaffian_via_weights(mk(Case::II, 1), VectorXd::Zero(1), VectorXd::Zero(0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(pfaffian_via_weights(mk(Case::VI, 3), VectorXd::Zero(1), VectorXd::Zero(0)),
                  std::invalid_argument);
}
