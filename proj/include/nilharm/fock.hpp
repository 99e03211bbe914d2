#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nilharm/algebra.hpp"
#include "nilharm/numerics.hpp"

namespace nilharm::fock {

using MultiIndex = std::vector<int>;

// Monomials z^m on C^n with |m| <= D in graded-lex order.  Under the
// Gaussian weight exp(-|lambda| |z|^2 / 2) (normalized so that ||1|| = 1),
// ||z^m||^2 = prod m_i! (2/|lambda|)^{m_i}.
class FockBasis {
 public:
  FockBasis(int n, int max_degree);
  int n() const { return n_; }
  int max_degree() const { return D_; }
  int size() const { return static_cast<int>(idx_.size()); }
  const MultiIndex& index(int i) const { return idx_[i]; }
  int position(const MultiIndex& m) const;  // -1 if absent
  static int degree(const MultiIndex& m);
  static double norm2(const MultiIndex& m, double lam);
  // positions of all indices of total degree <= d
  std::vector<int> up_to_degree(int d) const;

 private:
  int n_, D_;
  std::vector<MultiIndex> idx_;
  std::map<MultiIndex, int> pos_;
};

// All multi-indices of total degree d in n variables, graded-lex.
std::vector<MultiIndex> monomials(int n, int d);

// <pi(0, v) e_m, e_k> in one variable with alpha = sqrt(|lambda|/2) v, for
// lambda > 0:
//   e^{-|alpha|^2/2} sqrt(k!/m!) sum_p binom(m,p) alpha^{m-p} (-conj alpha)^{k-p} / (k-p)!
cplx displacement_entry(int k, int m, cplx alpha);

// Matrix of pi_lambda(t, v) on the normalized monomial basis:
//   pi(t,v)F(z) = e^{i lam t} e^{-lam|v|^2/4 - (lam/2) <z, v>} F(z + v),  lam > 0,
// and the entrywise conjugate of the |lam| matrix times e^{i lam t} for lam < 0.
Eigen::MatrixXcd pi_matrix(double lam, double t, const Eigen::VectorXcd& v, const FockBasis& basis);

// e(h, h')(t, v) = <pi(t, v) h, h'>.
cplx matrix_coefficient(double lam, const MultiIndex& h, const MultiIndex& hp, double t,
                        const Eigen::VectorXcd& v);
cplx matrix_coefficient(double lam, const Eigen::VectorXcd& h, const Eigen::VectorXcd& hp, double t,
                        const Eigen::VectorXcd& v, const FockBasis& basis);

struct MetaplecticComponent {
  std::string label;
  std::vector<int> index;
  long long dim = 0;
  std::vector<MultiIndex> basis;  // empty when only the dimension is enumerated
};

// Decomposition of the polynomials of degree <= D on the Heisenberg space
// V_lambda under K_lambda, for generic lambda.  I, III, V, VI (even), VII, IX
// carry explicit monomial bases; IV, VIII, X enumerate the refined
// components with dimensions only.
std::vector<MetaplecticComponent> metaplectic_components(const algebra::CaseSpec& spec, int D);

// Block layout (complex dimensions) of V_lambda for generic lambda.
std::vector<int> heisenberg_layout(const algebra::CaseSpec& spec);

// Partial trace of pi_lambda(t, v) over the monomials with the given degree
// in each block of `layout`.  v is in concatenated block coordinates.
cplx psi_numeric(const std::vector<int>& layout, double lam, const std::vector<int>& degrees,
                 double t, const Eigen::VectorXcd& v, int D);
cplx psi_numeric(const algebra::CaseSpec& spec, double lam, const std::vector<int>& degrees,
                 double t, const Eigen::VectorXcd& v, int D);

// (f x_lam g)(v) = int f(w) g(v - w) e^{(i lam/2) B(w, v)} dw on C^n with
// B(w, v) = -Im(w . conj v), evaluated at each point; quad is a box in R^{2n}
// with coordinates (Re w_1, Im w_1, ...).
using CFunction = std::function<cplx(const Eigen::VectorXcd&)>;
std::vector<cplx> twisted_convolution(const CFunction& f, const CFunction& g, double lam,
                                      const numerics::QuadratureSpec& quad,
                                      const std::vector<Eigen::VectorXcd>& points);

double symplectic_form(const Eigen::VectorXcd& w, const Eigen::VectorXcd& v);

// L_j^{n-1}(|lam||v|^2/2) e^{-|lam||v|^2/4}.
double laguerre_function(int j, int n, double lam, const Eigen::VectorXcd& v);

}  // namespace nilharm::fock
