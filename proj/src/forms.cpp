#include "nilharm/forms.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace nilharm::forms {

using Eigen::MatrixXd;
using Eigen::VectorXd;

Functional functional(const algebra::LauretAlgebra& alg, const VectorXd& x) {
  if (x.size() != alg.dim_g()) throw std::invalid_argument("functional: wrong dimension");
  return {x, alg.dim_c()};
}

Functional functional(const algebra::LauretAlgebra& alg, const VectorXd& h, const VectorXd& z) {
  return {alg.element(h, z), alg.dim_c()};
}

MatrixXd skew_form(const algebra::LauretAlgebra& alg, const Functional& lam) {
  return alg.pi_of(lam.x).transpose();
}

double pfaffian_abs(const MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("pfaffian_abs: matrix not square");
  if (m.rows() % 2) return 0.0;
  if (m.rows() == 0) return 1.0;
  Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) * m.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  double logsum = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double a = std::abs(es.eigenvalues()(i));
    if (a == 0.0) return 0.0;
    logsum += std::log(a);
  }
  return std::exp(0.5 * logsum);
}

SquareIntegrability classify(const algebra::LauretAlgebra& alg, const Functional& lam) {
  MatrixXd b = skew_form(alg, lam);
  const int d = static_cast<int>(b.rows());
  Eigen::JacobiSVD<MatrixXd> svd(b);
  const VectorXd& s = svd.singularValues();
  double smax = s.size() ? s(0) : 0.0;
  int rank = 0;
  if (smax > 0)
    for (int i = 0; i < s.size(); ++i)
      if (s(i) > kRankTol * smax) ++rank;
  SquareIntegrability r;
  r.kernel_dim = d - rank;
  r.verdict = r.kernel_dim == 0 ? Verdict::SquareIntegrable : Verdict::Degenerate;
  return r;
}

SquareIntegrability classify_generic(const algebra::LauretAlgebra& alg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  VectorXd x(alg.dim_g());
  for (int i = 0; i < x.size(); ++i) x(i) = nd(rng);
  return classify(alg, functional(alg, x));
}

double pfaffian_via_weights(const algebra::LauretAlgebra& alg, const VectorXd& h, const VectorXd& z) {
  const auto& spec = alg.spec();
  if (spec.kind == algebra::Case::II || (spec.kind == algebra::Case::VI && spec.n % 2 == 1))
    throw std::invalid_argument("pfaffian_via_weights: no weight data for case " + spec.label());
  if (h.size() != alg.rank() || z.size() != alg.dim_c())
    throw std::invalid_argument("pfaffian_via_weights: wrong (H, Z) dimensions");
  double p = 1.0;
  for (const auto& b : alg.blocks()) {
    double mu = b.mu(h, z);
    // weights +i mu and -i mu, each of multiplicity d_b
    p *= std::pow(std::abs(mu), 0.5 * b.complex_dim) * std::pow(std::abs(-mu), 0.5 * b.complex_dim);
  }
  return p;
}

double pfaffian_via_weights(const algebra::CaseSpec& spec, const VectorXd& h, const VectorXd& z) {
  return pfaffian_via_weights(algebra::build_case(spec), h, z);
}

}  // namespace nilharm::forms
