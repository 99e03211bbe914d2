#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "nilharm/algebra.hpp"
#include "nilharm/forms.hpp"
#include "nilharm/numerics.hpp"

namespace nilharm::plancherel {

struct PlancherelDensity {
  double theta = 0.0;     // |prod_alpha alpha(H)|, 1 when g' = 0
  double pfaffian = 0.0;  // |P(H + Z)|
  double value = 0.0;     // pfaffian * theta, 0 on degenerate functionals
  forms::Verdict verdict = forms::Verdict::Degenerate;
};

// h in torus coordinates, z in center coordinates.
PlancherelDensity density(const algebra::LauretAlgebra& alg, const Eigen::VectorXd& h,
                          const Eigen::VectorXd& z);

using PointFunction = std::function<cplx(const algebra::NPoint&)>;

// (f * g)(x) = int f(y) g(y^-1 x) dy over the quadrature box in the
// coordinates (z, v) of N, at each requested point.
std::vector<cplx> group_convolution(const algebra::LauretAlgebra& alg, const PointFunction& f,
                                    const PointFunction& g, const numerics::QuadratureSpec& quad,
                                    const std::vector<algebra::NPoint>& points);

// ------------------------------------------------------------ Heisenberg H_1

// Functions on H_1 = R x C in the coordinates of case VII, n = 1.
using HeisenbergFunction = std::function<cplx(double t, cplx v)>;

struct InversionTruncation {
  int J = 20;
  double lambda_max = 8.0;
  int lambda_nodes = 64;  // split evenly across the kink of |lambda| at 0
  double box = 6.5;       // half-width of the (s, w) box
  int w_nodes = 64;       // per real axis of w
  int s_nodes = 48;
};

struct InversionReport {
  std::vector<algebra::NPoint> probes;
  std::vector<cplx> exact;
  std::vector<cplx> sums;       // sum_{j<=J} int (f * psi_{lam,j})(x) |lam| dlam
  double fitted_c = 0.0;        // exact / sum at the first probe
  std::vector<double> rel_error;  // |c sum - exact| / |exact|
  InversionTruncation trunc;
  double max_rel_error() const;
};

// c sum_{j<=J} int (f * psi_{lam,j})(x) |lam| dlam against f(x).  The inner
// convolution uses F(lam, w) = int f(s, w) e^{-i lam s} ds, so that
// (f * psi_j)(t, v) = int F(lam, w) e^{i lam (t - B(w, v)/2)} phi_j(v - w) dw.
// The lambda nodes are the parallel axis.
InversionReport heisenberg_inversion_check(const HeisenbergFunction& f,
                                           const std::vector<algebra::NPoint>& probes,
                                           const InversionTruncation& trunc = {});
InversionReport heisenberg_inversion_check_serial(const HeisenbergFunction& f,
                                                  const std::vector<algebra::NPoint>& probes,
                                                  const InversionTruncation& trunc = {});

struct ProjectionReport {
  double c_prime = 0.0;      // fitted at the first point (i == j)
  double max_abs = 0.0;      // max |psi_i x psi_j| (i != j)
  double max_rel_residual = 0.0;  // max |conv - c' psi_j| / |c' psi_j| (i == j)
  std::vector<cplx> values;
};

// Twisted convolution of the Laguerre traces phi_i x_lam phi_j on C at the
// given points (case VII, n = 1).
ProjectionReport projection_check(double lam, int i, int j, const numerics::QuadratureSpec& quad,
                                  const std::vector<Eigen::VectorXcd>& points);

struct OrthogonalityReport {
  double fitted_c = 0.0;   // from <1, 1> at the same lambda
  double residual = 0.0;   // max |G - c <h1,h3><h2,h4>| over all quadruples
  double cross_max = 0.0;  // max |G| between lam and lam1
  int max_degree = 0;
};

// G(h1,h2,h3,h4) = int_C e_lam(h1,h2)(0,v) conj(e_mu(h3,h4)(0,v)) dv over
// normalized monomials of degree <= max_degree, for mu = lam and mu = lam1.
OrthogonalityReport coefficient_orthogonality(double lam, double lam1, int max_degree,
                                              const numerics::QuadratureSpec& quad);

struct Formula1Report {
  std::vector<cplx> lhs;  // (f * e(h_a, h_a))(x)
  std::vector<cplx> rhs;  // sum_b <f, e(h_a, h_b)> e(h_a, h_b)(x)
  double max_abs_error = 0.0;
};

// Expansion of f * e_lam(h_a, h_a) in matrix coefficients on H_1; b runs over
// degrees <= beta_max.
Formula1Report formula1_check(const HeisenbergFunction& f, double lam, int alpha, int beta_max,
                              const numerics::QuadratureSpec& quad,
                              const std::vector<algebra::NPoint>& points);

// ------------------------------------------------------- case I at identity

struct CaseIProbeSpec {
  double a = 1.0;  // f(z, v) = exp(-a |z|^2 - b |v|^2) on su(2) + H
  double b = 1.0;
  int J = 30;
  double theta_max = 16.0;
  int theta_nodes = 64;
  int r_nodes = 64;
  int s_nodes = 128;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
};

struct CaseIProbeReport {
  cplx rhs{0.0, 0.0};
  double std_error = 0.0;
  double f_identity = 1.0;
  double ratio = 0.0;        // Re rhs / f(e)
  double ratio_error = 0.0;  // std_error / f(e)
  std::size_t samples = 0;
  double deterministic_ratio = 0.0;  // same quadrature, orbit average in closed form
};

// sum_{j<=J} int_C (f * phi_{lam,j})(e) |P(H)| theta(H) dH for case I, n = 1.
// phi is the G'-orbit average of psi; each Haar sample of G' contributes a
// deterministic (theta, r, s) quadrature, with z = r e_3 and v = s e_0 after
// the radial reduction.
CaseIProbeReport general_inversion_probe(const CaseIProbeSpec& spec);

}  // namespace nilharm::plancherel
