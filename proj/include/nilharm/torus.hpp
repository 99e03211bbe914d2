#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nilharm/numerics.hpp"

namespace nilharm::torus {

// One simple (or abelian) factor of a compact matrix Lie algebra.
//   su(n): traceless skew-Hermitian n x n, inner product kappa Re tr(A^H B),
//          kappa = 1/2 for n = 2 (so that su(2) is Im H isometrically), else 1
//   so(n): real skew n x n, kappa = 1/2
//   sp(n): skew-Hermitian 2n x 2n commuting with the quaternionic structure
//          of numerics::haar_sample, kappa = 1/2
struct Factor {
  enum class Kind { SU, SO, SP };
  Kind kind;
  int n;
  std::string name() const;
  int matrix_dim() const { return kind == Kind::SP ? 2 * n : n; }
  double kappa() const;
};

// Parses "su(3)", "so(4)", "sp(2)", "su(2)+su(2)".
std::vector<Factor> parse_algebra(const std::string& s);

// A compact semisimple algebra in its defining block-diagonal realization,
// with an orthonormal basis, an orthonormal basis of a maximal torus, and the
// roots.  A root r acts on H = sum h_k T_k as alpha(H) = i <r, h>.
class RootSystem {
 public:
  explicit RootSystem(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  int matrix_dim() const { return mdim_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int rank() const { return static_cast<int>(torus_.size()); }

  const std::vector<Eigen::MatrixXcd>& basis() const { return basis_; }
  const std::vector<Eigen::MatrixXcd>& torus_basis() const { return torus_; }
  const std::vector<Eigen::VectorXd>& roots() const { return roots_; }
  const std::vector<Eigen::VectorXd>& positive_roots() const { return positive_; }

  double inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) const;
  Eigen::VectorXd coords(const Eigen::MatrixXcd& x) const;
  Eigen::MatrixXcd matrix(const Eigen::VectorXd& c) const;
  Eigen::MatrixXcd torus_matrix(const Eigen::VectorXd& h) const;
  // Torus coordinates of a matrix, by orthogonal projection.
  Eigen::VectorXd torus_coords(const Eigen::MatrixXcd& x) const;

  // Matrix of Ad(g) in the orthonormal basis.
  Eigen::MatrixXd Ad(const Eigen::MatrixXcd& g) const;
  // Matrix of ad(x) in the orthonormal basis.
  Eigen::MatrixXd ad(const Eigen::MatrixXcd& x) const;

  numerics::GroupSpec group() const;

  bool in_chamber(const Eigen::VectorXd& h, double tol = 0.0) const;
  bool is_regular(const Eigen::VectorXd& h, double tol = 1e-12) const;

 private:
  std::vector<Factor> factors_;
  std::vector<int> offsets_;
  int mdim_ = 0;
  std::vector<Eigen::MatrixXcd> basis_;
  std::vector<int> basis_factor_;
  std::vector<Eigen::MatrixXcd> torus_;
  std::vector<Eigen::VectorXd> roots_;
  std::vector<Eigen::VectorXd> positive_;
};

RootSystem root_system(const std::string& spec);

// prod_{alpha in Delta} |alpha(H)|, over all roots.
double theta(const RootSystem& rs, const Eigen::VectorXd& h);

struct ChamberPoint {
  Eigen::MatrixXcd g;  // g X g^{-1} = torus_matrix(h)
  Eigen::VectorXd h;   // in the closed positive chamber
};

ChamberPoint to_chamber(const RootSystem& rs, const Eigen::MatrixXcd& x);

// Weyl dimension formula for Sp(n) (highest weight partition, padded with
// zeros) and for GL(k) / U(k) (weakly decreasing integers).
long long dim_sp(int n, const std::vector<int>& lambda);
long long dim_gl(int k, const std::vector<int>& lambda);

}  // namespace nilharm::torus
