#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nilharm {

using cplx = std::complex<double>;

namespace numerics {

// L_k^alpha(x) by the three-term recurrence.
double laguerre(int k, double alpha, double x);

// Fills out[0..kmax] with L_0^alpha(x) .. L_kmax^alpha(x).
void laguerre_all(int kmax, double alpha, double x, std::span<double> out);

// Average of exp(i a <xi, e>) over the unit sphere S^2, i.e. sin(a)/a.
double sphere_character(double a);

// ---------------------------------------------------------------- quadrature

enum class Rule { GaussLegendre, Trapezoid };

struct QuadratureSpec {
  int nodes = 32;                  // per axis
  std::vector<double> lower;       // per-axis box
  std::vector<double> upper;
  Rule rule = Rule::GaussLegendre;

  static QuadratureSpec box(int dim, double half_width, int nodes,
                            Rule rule = Rule::GaussLegendre);
  int dim() const { return static_cast<int>(lower.size()); }
  double total_nodes() const;
};

// Half-width L with exp(-decay L^2) < tol.
double gaussian_half_width(double decay, double tol = 1e-16);

struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre nodes on [-1,1] by Newton iteration on P_n.
Rule1D gauss_legendre(int n);
Rule1D rule_on(Rule rule, int n, double a, double b);

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Maximum number of integrand evaluations; NILHARM_BUDGET overrides.
double budget();
void check_budget(double evaluations, const std::string& what);

using Integrand = std::function<cplx(std::span<const double>)>;

// Tensor-product quadrature.  The parallel version splits the outermost
// axis across threads and adds the slabs in index order, so it returns the
// same bits as the serial reference.
cplx grid_quadrature(const Integrand& f, const QuadratureSpec& spec);
cplx grid_quadrature_serial(const Integrand& f, const QuadratureSpec& spec);

// ------------------------------------------------------------- Haar samples

struct GroupSpec {
  enum class Kind { SO, SU, U, Sp, Torus, Product };
  Kind kind = Kind::U;
  int n = 1;
  std::vector<GroupSpec> factors;

  static GroupSpec so(int n) { return {Kind::SO, n, {}}; }
  static GroupSpec su(int n) { return {Kind::SU, n, {}}; }
  static GroupSpec u(int n) { return {Kind::U, n, {}}; }
  static GroupSpec sp(int n) { return {Kind::Sp, n, {}}; }
  static GroupSpec torus(int n) { return {Kind::Torus, n, {}}; }
  static GroupSpec product(std::vector<GroupSpec> f) {
    return {Kind::Product, 0, std::move(f)};
  }
  // Size of the defining complex matrices.
  int matrix_dim() const;
};

// Sp(n) is realized in U(2n) as the matrices commuting with the antilinear
// map x -> Omega conj(x), Omega = I_n (x) [[0,-1],[1,0]].  Each 2x2 block is
// then [[a, -conj(b)], [b, conj(a)]], the left-multiplication matrix of the
// quaternion a + b j.
Eigen::MatrixXcd haar_sample(const GroupSpec& g, std::mt19937_64& rng);
Eigen::MatrixXcd quaternionic_structure(int n);

// Seed for batch b of a stream; splitmix64 of (seed, b).
std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t batch);

// ------------------------------------------------------------------ Monte Carlo

struct MCEstimate {
  cplx mean{0.0, 0.0};
  double std_error = 0.0;  // sqrt(E|f - mean|^2 / N)
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kBatch = 1024;

using HaarIntegrand = std::function<cplx(const Eigen::MatrixXcd&)>;
using HaarVectorIntegrand = std::function<Eigen::VectorXcd(const Eigen::MatrixXcd&)>;

MCEstimate mc_integrate(const HaarIntegrand& f, const GroupSpec& g, std::size_t samples,
                        std::uint64_t seed);
MCEstimate mc_integrate_serial(const HaarIntegrand& f, const GroupSpec& g,
                               std::size_t samples, std::uint64_t seed);

// Componentwise estimates of a vector integrand sharing one set of samples.
std::vector<MCEstimate> mc_integrate_vec(const HaarVectorIntegrand& f, int dim,
                                         const GroupSpec& g, std::size_t samples,
                                         std::uint64_t seed);
std::vector<MCEstimate> mc_integrate_vec_serial(const HaarVectorIntegrand& f, int dim,
                                                const GroupSpec& g, std::size_t samples,
                                                std::uint64_t seed);

}  // namespace numerics
}  // namespace nilharm
