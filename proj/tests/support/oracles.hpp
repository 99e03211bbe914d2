#pragma once

// Independent reference computations shared by unit and acceptance tests.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "nilharm/torus.hpp"

namespace oracle {

// |det| of the differential of (g T, h) -> Ad(g) H at (g0 T, h), using
// central differences along g0 exp(y R) for an orthonormal basis R of the
// torus complement, and along the torus directions.
inline double weyl_jacobian_fd(const nilharm::torus::RootSystem& rs, const Eigen::VectorXd& h,
                               const Eigen::MatrixXcd& g0, double eps = 1e-4) {
  const int dim = rs.dim(), r = rs.rank();
  Eigen::MatrixXd jac(dim, dim);
  Eigen::MatrixXcd H = rs.torus_matrix(h);
  auto image = [&](const Eigen::MatrixXcd& g, const Eigen::MatrixXcd& x) {
    return rs.coords(g * x * g.adjoint());
  };
  int col = 0;
  for (int a = 0; a < dim; ++a) {
    const Eigen::MatrixXcd& b = rs.basis()[a];
    bool in_torus = false;
    for (const auto& t : rs.torus_basis())
      if ((t - b).norm() == 0.0) in_torus = true;
    if (in_torus) continue;
    Eigen::MatrixXcd gp = g0 * (eps * b).exp();
    Eigen::MatrixXcd gm = g0 * (-eps * b).exp();
    jac.col(col++) = (image(gp, H) - image(gm, H)) / (2 * eps);
  }
  for (int k = 0; k < r; ++k) {
    Eigen::MatrixXcd t = rs.torus_basis()[k];
    jac.col(col++) = (image(g0, H + eps * t) - image(g0, H - eps * t)) / (2 * eps);
  }
  return std::abs(jac.determinant());
}

// |Pf(M)| from an LU determinant.
inline double pfaffian_abs_lu(const Eigen::MatrixXd& m) {
  if (m.rows() % 2) return 0.0;
  return std::sqrt(std::abs(m.fullPivLu().determinant()));
}

}  // namespace oracle
