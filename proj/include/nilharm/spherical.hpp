#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nilharm/algebra.hpp"
#include "nilharm/numerics.hpp"

namespace nilharm::spherical {

// lambda = H + Z in chamber form (torus coordinates h, center coordinates z)
// and one degree per weight block of V_lambda.  For I and VII this is the
// single index j; for V, VI, IX a multi-index (m_1..m_n); for III
// (j, l1, l2, s) with absent blocks dropped; for VIII (r, s, l) and for the
// X instance (k_1..k_m, r, s, l), i.e. the sum of the refined components
// sharing those block degrees.
struct SphericalIndex {
  algebra::CaseSpec spec;
  Eigen::VectorXd h;
  Eigen::VectorXd z;
  std::vector<int> j;
};

enum class Method { ClosedForm, OrbitMC };

struct SphericalValue {
  cplx value{0.0, 0.0};
  Method method = Method::ClosedForm;
  double std_error = 0.0;
  std::size_t samples = 0;
};

// dim W_j, the value at the identity.
double dimension(const algebra::LauretAlgebra& alg, const std::vector<int>& j);

// psi_{lambda,j}(z, v) = e^{i<lambda, z>} prod_b L_{j_b}^{d_b-1}(|mu_b||v_b|^2/2) e^{-|mu_b||v_b|^2/4}
// where mu_b is the weight of lambda on block b and d_b its complex dimension.
cplx psi_closed(const algebra::LauretAlgebra& alg, const SphericalIndex& idx,
                const Eigen::VectorXd& z, const Eigen::VectorXd& v);
cplx psi_closed(const SphericalIndex& idx, const Eigen::VectorXd& z, const Eigen::VectorXd& v);

// phi(z, v) = int_{G'} psi(g.(z, v)) dg by Haar Monte Carlo over G'.  The
// integrand is right-T-invariant, so sampling all of G' realizes G'/T with
// total mass 1.  Cases with trivial G' return psi exactly.
SphericalValue phi_orbit(const SphericalIndex& idx, const Eigen::VectorXd& z,
                         const Eigen::VectorXd& v, std::size_t samples, std::uint64_t seed);

// Several indices sharing one lambda and one set of samples.
std::vector<SphericalValue> phi_orbit_batch(const algebra::CaseSpec& spec, const Eigen::VectorXd& h,
                                            const Eigen::VectorXd& zc,
                                            const std::vector<std::vector<int>>& indices,
                                            const Eigen::VectorXd& z, const Eigen::VectorXd& v,
                                            std::size_t samples, std::uint64_t seed);

// Case I: sphere_character(|lam||z|) L_j^{2n-1}(|lam||v|^2/2) e^{-|lam||v|^2/4}.
double phi_caseI_closed(double lam, int j, const Eigen::VectorXd& z, const Eigen::VectorXd& v);

// ----------------------------------------------------- canonical polynomials

// A polynomial in the invariant generators s_b = |v_b|^2, b ranging over the
// generator blocks; coefficient c_i multiplies prod_b s_b^{monomials[i][b]}.
struct InvariantPolynomial {
  std::vector<std::vector<int>> monomials;
  Eigen::VectorXd coeffs;
  std::vector<int> leading;
  double operator()(const std::vector<double>& s) const;
};

struct CanonicalSystem {
  std::vector<std::string> generators;
  std::vector<int> generator_dims;  // complex dimension behind each s_b
  std::vector<InvariantPolynomial> q;
  Eigen::MatrixXd gram;  // <q_i, q_j> recomputed after orthogonalization
};

// Gram-Schmidt over the graded monomials in the block norms, orthonormal for
// the probability measure proportional to e^{-lam|v|^2/2} dv (so q_j(v)
// e^{-lam|v|^2/4} are orthonormal in L^2(V)).  Generators: VII |v|^2; III
// and VIII the block norms; IV |u|^2, |w|^2.
CanonicalSystem canonical_polynomials(const algebra::CaseSpec& spec, int max_total_degree,
                                      double lam = 1.0, int radial_nodes = 96);

// Coefficients of L_j^alpha(c s) in powers of s.
Eigen::VectorXd laguerre_coefficients(int j, double alpha, double c);

// ------------------------------------------------------ functional equation

using PointFunction = std::function<cplx(const algebra::NPoint&)>;

// Average over K of phi(x (k.y)), either by a weighted list of
// automorphisms or by Haar Monte Carlo.
struct KQuadrature {
  std::vector<algebra::OrthAutomorphism> nodes;
  std::vector<double> weights;
};
struct KMonteCarlo {
  numerics::GroupSpec group;
  std::function<algebra::OrthAutomorphism(const Eigen::MatrixXcd&)> action;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
};

struct Residual {
  double residual = 0.0;
  double std_error = 0.0;  // 0 for quadrature
  cplx average{0.0, 0.0};
  cplx product{0.0, 0.0};
};

// |avg_k phi~(x (k.y)) - phi~(x) phi~(y)| with phi~ = phi / phi(e).
Residual functional_equation_residual(const algebra::LauretAlgebra& alg, const PointFunction& phi,
                                      const algebra::NPoint& x, const algebra::NPoint& y,
                                      const KQuadrature& k);
Residual functional_equation_residual(const algebra::LauretAlgebra& alg, const PointFunction& phi,
                                      const algebra::NPoint& x, const algebra::NPoint& y,
                                      const KMonteCarlo& k);

// Equispaced circle acting on V = C^n by scalars e^{i theta}.
KQuadrature circle_quadrature(const algebra::LauretAlgebra& alg, int nodes);
// K = G' x U with its Haar measure; the sampler keeps a pointer to alg.
KMonteCarlo k_sampler(const algebra::LauretAlgebra& alg, std::size_t samples, std::uint64_t seed);

}  // namespace nilharm::spherical
