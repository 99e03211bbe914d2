#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nilharm/numerics.hpp"
#include "nilharm/torus.hpp"

namespace nilharm::algebra {

enum class Case { I, II, III, IV, V, VI, VII, VIII, IX, X };

std::string case_name(Case c);
Case parse_case(const std::string& s);  // "I".."X", also "X-instance"

// Parameters follow list A.  Case X is the su(m) + su(2) + c instance
// (alpha = beta = 1); other alpha, beta are representable but not buildable.
struct CaseSpec {
  Case kind = Case::VII;
  int n = 1;
  int k = 0;
  int k1 = 0, k2 = 0;
  int m = 0;
  int alpha = 1, beta = 1;

  void validate() const;  // throws std::invalid_argument
  std::string label() const;
};

// An isotypic piece of V on which the maximal torus and the center act by a
// single complex structure J: pi(sum h_k T_k + sum z_l C_l)|_block = mu J
// with mu = <torus_coeff, h> + <center_coeff, z>.  Complex coordinates on a
// block are consecutive coordinate pairs (x, y) -> x + i y.
struct WeightBlock {
  std::string name;
  std::vector<int> coords;
  int complex_dim = 0;
  Eigen::VectorXd torus_coeff;
  Eigen::VectorXd center_coeff;

  double mu(const Eigen::VectorXd& h, const Eigen::VectorXd& z) const;
  Eigen::VectorXcd complex_coords(const Eigen::VectorXd& v) const;
  double norm2(const Eigen::VectorXd& v) const;
};

struct OrthAutomorphism {
  Eigen::MatrixXd g_part;
  Eigen::MatrixXd V_part;
};

class LauretAlgebra {
 public:
  using Rep = std::function<Eigen::MatrixXd(const Eigen::MatrixXcd&)>;

  const CaseSpec& spec() const { return spec_; }
  int dim_g() const { return static_cast<int>(pi_.size()); }
  int dim_c() const { return dim_c_; }
  int dim_gprime() const { return dim_g() - dim_c_; }
  int dim_V() const { return dim_V_; }
  int rank() const { return derived_ ? derived_->rank() : 0; }

  // pi(X_i) on the orthonormal basis of V; g' basis first, then the center.
  const std::vector<Eigen::MatrixXd>& pi() const { return pi_; }
  Eigen::MatrixXd pi_of(const Eigen::VectorXd& x) const;
  const std::optional<torus::RootSystem>& derived() const { return derived_; }

  // g-coordinates of H + Z for torus coordinates h and center coordinates z.
  Eigen::VectorXd element(const Eigen::VectorXd& h, const Eigen::VectorXd& z) const;

  const std::vector<WeightBlock>& blocks() const { return blocks_; }
  std::vector<int> layout() const;

  // K = G' x U.
  std::optional<numerics::GroupSpec> gprime_group() const;
  std::optional<numerics::GroupSpec> u_group() const { return u_group_; }
  OrthAutomorphism gprime_automorphism(const Eigen::MatrixXcd& g) const;
  OrthAutomorphism u_automorphism(const Eigen::MatrixXcd& u) const;
  OrthAutomorphism sample_k(std::mt19937_64& rng) const;

  // Copy with replaced pi matrices, for negative controls.
  LauretAlgebra with_pi(std::vector<Eigen::MatrixXd> pi) const;

 private:
  friend LauretAlgebra build_case(const CaseSpec&);
  CaseSpec spec_;
  int dim_c_ = 0;
  int dim_V_ = 0;
  std::vector<Eigen::MatrixXd> pi_;
  std::optional<torus::RootSystem> derived_;
  Rep gprime_rep_;
  Rep u_rep_;
  std::optional<numerics::GroupSpec> u_group_;
  std::vector<WeightBlock> blocks_;
};

LauretAlgebra build_case(const CaseSpec& spec);

// The w in g with <w, X_i> = <pi(X_i) u, v> for every basis vector X_i.
Eigen::VectorXd bracket_of(const LauretAlgebra& alg, const Eigen::VectorXd& u,
                           const Eigen::VectorXd& v);

struct Check {
  std::string name;
  double defect = 0.0;
  bool pass = false;
};

std::vector<Check> check_structure(const LauretAlgebra& alg, double tol = 1e-12);

std::pair<Eigen::VectorXd, Eigen::VectorXd> apply_automorphism(const LauretAlgebra& alg,
                                                               const OrthAutomorphism& a,
                                                               const Eigen::VectorXd& z,
                                                               const Eigen::VectorXd& v);

// Group law (z1,v1)(z2,v2) = (z1 + z2 + [v1,v2]/2, v1 + v2) in exponential
// coordinates.
struct NPoint {
  Eigen::VectorXd z;
  Eigen::VectorXd v;
};

NPoint multiply(const LauretAlgebra& alg, const NPoint& a, const NPoint& b);
NPoint inverse(const NPoint& a);

// Real-matrix helpers for the documented coordinate conventions.
Eigen::MatrixXd realify(const Eigen::MatrixXcd& m);
Eigen::MatrixXd quaternionic(const Eigen::MatrixXcd& m);  // S realify(m) S

}  // namespace nilharm::algebra
