#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "nilharm/algebra.hpp"

namespace nilharm::forms {

// X_lambda with lambda(Y) = <Y, X_lambda>; g' coordinates first, then center.
struct Functional {
  Eigen::VectorXd x;
  int dim_c = 0;

  Eigen::VectorXd H() const { return x.head(x.size() - dim_c); }
  Eigen::VectorXd Z() const { return x.tail(dim_c); }
  double norm() const { return x.norm(); }
};

Functional functional(const algebra::LauretAlgebra& alg, const Eigen::VectorXd& x);
// From torus coordinates h and center coordinates z.
Functional functional(const algebra::LauretAlgebra& alg, const Eigen::VectorXd& h,
                      const Eigen::VectorXd& z);

// M(i, j) = <[e_i, e_j], X_lambda> = pi(X_lambda)^T.
Eigen::MatrixXd skew_form(const algebra::LauretAlgebra& alg, const Functional& lam);

// |Pf(M)| = prod over the +-i mu eigenvalue pairs of mu; 0 in odd dimension.
double pfaffian_abs(const Eigen::MatrixXd& m);

enum class Verdict { SquareIntegrable, Degenerate };

struct SquareIntegrability {
  Verdict verdict = Verdict::Degenerate;
  int kernel_dim = 0;
};

inline constexpr double kRankTol = 1e-10;  // relative to the largest singular value

SquareIntegrability classify(const algebra::LauretAlgebra& alg, const Functional& lam);

// Verdict at a random functional (generic with probability one).
SquareIntegrability classify_generic(const algebra::LauretAlgebra& alg, std::uint64_t seed = 1);

// prod over weights +-mu_b (multiplicity d_b each) of |mu_b|^{d_b / 2}.
double pfaffian_via_weights(const algebra::LauretAlgebra& alg, const Eigen::VectorXd& h,
                            const Eigen::VectorXd& z);
double pfaffian_via_weights(const algebra::CaseSpec& spec, const Eigen::VectorXd& h,
                            const Eigen::VectorXd& z);

}  // namespace nilharm::forms
