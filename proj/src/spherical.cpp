#include "nilharm/spherical.hpp"

#include <cmath>
#include <stdexcept>

namespace nilharm::spherical {

using algebra::LauretAlgebra;
using algebra::NPoint;
using algebra::OrthAutomorphism;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {

double binom(double n, double k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

void require_blocks(const LauretAlgebra& alg) {
  int covered = 0;
  for (const auto& b : alg.blocks()) covered += static_cast<int>(b.coords.size());
  if (covered != alg.dim_V())
    throw std::invalid_argument("case " + alg.spec().label() + " has no square-integrable representations");
}

// lambda-dependent data of psi, evaluated once per index.
struct Psi {
  VectorXd x;
  std::vector<double> mu;
  const LauretAlgebra* alg;

  Psi(const LauretAlgebra& a, const VectorXd& h, const VectorXd& zc) : alg(&a) {
    require_blocks(a);
    if (h.size() != a.rank() || zc.size() != a.dim_c())
      throw std::invalid_argument("spherical: lambda has wrong dimensions");
    x = a.element(h, zc);
    for (const auto& b : a.blocks()) {
      double m = b.mu(h, zc);
      if (m == 0.0) throw std::invalid_argument("spherical: lambda is degenerate on block " + b.name);
      mu.push_back(m);
    }
  }

  cplx operator()(const std::vector<int>& j, const VectorXd& z, const VectorXd& v) const {
    const auto& bl = alg->blocks();
    if (j.size() != bl.size())
      throw std::invalid_argument("spherical: need one degree per weight block");
    double r = 1.0;
    for (std::size_t b = 0; b < bl.size(); ++b) {
      if (j[b] < 0) throw std::invalid_argument("spherical: negative index");
      double s = std::abs(mu[b]) * bl[b].norm2(v);
      r *= numerics::laguerre(j[b], bl[b].complex_dim - 1, 0.5 * s) * std::exp(-0.25 * s);
    }
    return std::polar(r, x.dot(z));
  }
};

}  // namespace

double dimension(const LauretAlgebra& alg, const std::vector<int>& j) {
  const auto& bl = alg.blocks();
  if (j.size() != bl.size()) throw std::invalid_argument("dimension: need one degree per weight block");
  double d = 1.0;
  for (std::size_t b = 0; b < bl.size(); ++b) d *= binom(bl[b].complex_dim + j[b] - 1, j[b]);
  return std::round(d);
}

cplx psi_closed(const LauretAlgebra& alg, const SphericalIndex& idx, const VectorXd& z,
                const VectorXd& v) {
  if (z.size() != alg.dim_g() || v.size() != alg.dim_V())
    throw std::invalid_argument("psi_closed: point has wrong dimensions");
  return Psi(alg, idx.h, idx.z)(idx.j, z, v);
}

cplx psi_closed(const SphericalIndex& idx, const VectorXd& z, const VectorXd& v) {
  return psi_closed(algebra::build_case(idx.spec), idx, z, v);
}

std::vector<SphericalValue> phi_orbit_batch(const algebra::CaseSpec& spec, const VectorXd& h,
                                            const VectorXd& zc,
                                            const std::vector<std::vector<int>>& indices,
                                            const VectorXd& z, const VectorXd& v,
                                            std::size_t samples, std::uint64_t seed) {
  auto alg = algebra::build_case(spec);
  if (z.size() != alg.dim_g() || v.size() != alg.dim_V())
    throw std::invalid_argument("phi_orbit: point has wrong dimensions");
  Psi psi(alg, h, zc);
  std::vector<SphericalValue> out;
  auto group = alg.gprime_group();
  if (!group) {
    for (const auto& j : indices) out.push_back({psi(j, z, v), Method::ClosedForm, 0.0, 0});
    return out;
  }
  const int m = static_cast<int>(indices.size());
  numerics::HaarVectorIntegrand f = [&](const MatrixXcd& g) {
    OrthAutomorphism k = alg.gprime_automorphism(g);
    VectorXd gz = k.g_part * z, gv = k.V_part * v;
    VectorXcd r(m);
    for (int i = 0; i < m; ++i) r(i) = psi(indices[i], gz, gv);
    return r;
  };
  for (const auto& e : numerics::mc_integrate_vec(f, m, *group, samples, seed))
    out.push_back({e.mean, Method::OrbitMC, e.std_error, e.samples});
  return out;
}

SphericalValue phi_orbit(const SphericalIndex& idx, const VectorXd& z, const VectorXd& v,
                         std::size_t samples, std::uint64_t seed) {
  return phi_orbit_batch(idx.spec, idx.h, idx.z, {idx.j}, z, v, samples, seed)[0];
}

double phi_caseI_closed(double lam, int j, const VectorXd& z, const VectorXd& v) {
  if (z.size() != 3 || v.size() % 4 != 0 || v.size() == 0)
    throw std::invalid_argument("phi_caseI_closed: z in R^3 and v in H^n required");
  const int n = static_cast<int>(v.size() / 4);
  double a = std::abs(lam), s = a * v.squaredNorm();
  return numerics::sphere_character(a * z.norm()) * numerics::laguerre(j, 2 * n - 1, 0.5 * s) *
         std::exp(-0.25 * s);
}

// ------------------------------------------------------------------ polynomials

double InvariantPolynomial::operator()(const std::vector<double>& s) const {
  double r = 0.0;
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    double t = coeffs(i);
    for (std::size_t b = 0; b < s.size(); ++b) t *= std::pow(s[b], monomials[i][b]);
    r += t;
  }
  return r;
}

Eigen::VectorXd laguerre_coefficients(int j, double alpha, double c) {
  VectorXd out(j + 1);
  for (int i = 0; i <= j; ++i)
    out(i) = (i % 2 ? -1.0 : 1.0) *
             std::exp(std::lgamma(j + alpha + 1) - std::lgamma(j - i + 1.0) - std::lgamma(alpha + i + 1) -
                      std::lgamma(i + 1.0)) *
             std::pow(c, i);
  return out;
}

CanonicalSystem canonical_polynomials(const algebra::CaseSpec& spec, int max_total_degree, double lam,
                                      int radial_nodes) {
  if (max_total_degree < 0) throw std::invalid_argument("canonical_polynomials: negative degree");
  if (!(lam > 0)) throw std::invalid_argument("canonical_polynomials: lam must be positive");
  auto alg = algebra::build_case(spec);
  require_blocks(alg);
  CanonicalSystem sys;
  for (const auto& b : alg.blocks()) {
    sys.generators.push_back("|" + b.name + "|^2");
    sys.generator_dims.push_back(b.complex_dim);
  }
  const int B = static_cast<int>(sys.generators.size());

  // graded monomials in the generators
  std::vector<std::vector<int>> mons;
  std::function<void(std::vector<int>&, int, int)> rec = [&](std::vector<int>& m, int pos, int left) {
    if (pos == B - 1) {
      m[pos] = left;
      mons.push_back(m);
      return;
    }
    for (int a = left; a >= 0; --a) {
      m[pos] = a;
      rec(m, pos + 1, left - a);
    }
  };
  for (int d = 0; d <= max_total_degree; ++d) {
    std::vector<int> m(B, 0);
    rec(m, 0, d);
  }
  const int M = static_cast<int>(mons.size());

  // radial rule per block for r^{2d-1} e^{-lam r^2/2} dr, normalized to mass 1
  const double R = numerics::gaussian_half_width(lam / 2, 1e-40);
  numerics::Rule1D base = numerics::rule_on(numerics::Rule::GaussLegendre, radial_nodes, 0.0, R);
  std::vector<std::vector<double>> s_nodes(B), w_nodes(B);
  for (int b = 0; b < B; ++b) {
    double mass = 0.0;
    for (int i = 0; i < radial_nodes; ++i) {
      double r = base.x[i];
      double w = base.w[i] * std::pow(r, 2 * sys.generator_dims[b] - 1) * std::exp(-lam * r * r / 2);
      s_nodes[b].push_back(r * r);
      w_nodes[b].push_back(w);
      mass += w;
    }
    for (double& w : w_nodes[b]) w /= mass;
  }
  double total = std::pow(static_cast<double>(radial_nodes), B);
  numerics::check_budget(total * M, "canonical_polynomials");
  const long long N = static_cast<long long>(total);

  // columns: sqrt(weight) * monomial values on the tensor grid
  MatrixXd A(N, M);
  std::vector<int> id(B, 0);
  for (long long p = 0; p < N; ++p) {
    long long q = p;
    double w = 1.0;
    for (int b = B - 1; b >= 0; --b) {
      id[b] = static_cast<int>(q % radial_nodes);
      q /= radial_nodes;
      w *= w_nodes[b][id[b]];
    }
    double sw = std::sqrt(w);
    for (int c = 0; c < M; ++c) {
      double t = sw;
      for (int b = 0; b < B; ++b) t *= std::pow(s_nodes[b][id[b]], mons[c][b]);
      A(p, c) = t;
    }
  }

  // modified Gram-Schmidt, two passes, tracking monomial coefficients
  MatrixXd C = MatrixXd::Identity(M, M);
  for (int i = 0; i < M; ++i) {
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < i; ++k) {
        double r = A.col(k).dot(A.col(i));
        A.col(i) -= r * A.col(k);
        C.col(i) -= r * C.col(k);
      }
    double nrm = A.col(i).norm();
    if (nrm == 0.0) throw std::runtime_error("canonical_polynomials: dependent monomials");
    A.col(i) /= nrm;
    C.col(i) /= nrm;
  }
  sys.gram = A.transpose() * A;
  for (int i = 0; i < M; ++i) {
    InvariantPolynomial q;
    q.monomials = std::vector<std::vector<int>>(mons.begin(), mons.begin() + i + 1);
    q.coeffs = C.col(i).head(i + 1);
    q.leading = mons[i];
    sys.q.push_back(std::move(q));
  }
  return sys;
}

// ------------------------------------------------------------ functional equation

namespace {

NPoint act(const OrthAutomorphism& k, const NPoint& y) { return {k.g_part * y.z, k.V_part * y.v}; }

struct Normalized {
  const PointFunction& phi;
  cplx e;
  cplx operator()(const NPoint& p) const { return phi(p) / e; }
};

Normalized normalize(const LauretAlgebra& alg, const PointFunction& phi) {
  cplx e = phi({VectorXd::Zero(alg.dim_g()), VectorXd::Zero(alg.dim_V())});
  if (std::abs(e) == 0.0) throw std::invalid_argument("functional_equation_residual: phi(e) = 0");
  return {phi, e};
}

}  // namespace

Residual functional_equation_residual(const LauretAlgebra& alg, const PointFunction& phi, const NPoint& x,
                                      const NPoint& y, const KQuadrature& k) {
  if (k.nodes.size() != k.weights.size() || k.nodes.empty())
    throw std::invalid_argument("functional_equation_residual: empty or mismatched K rule");
  auto f = normalize(alg, phi);
  Residual r;
  for (std::size_t i = 0; i < k.nodes.size(); ++i)
    r.average += k.weights[i] * f(algebra::multiply(alg, x, act(k.nodes[i], y)));
  r.product = f(x) * f(y);
  r.residual = std::abs(r.average - r.product);
  return r;
}

Residual functional_equation_residual(const LauretAlgebra& alg, const PointFunction& phi, const NPoint& x,
                                      const NPoint& y, const KMonteCarlo& k) {
  auto f = normalize(alg, phi);
  numerics::HaarIntegrand g = [&](const MatrixXcd& m) {
    return f(algebra::multiply(alg, x, act(k.action(m), y)));
  };
  auto est = numerics::mc_integrate(g, k.group, k.samples, k.seed);
  Residual r;
  r.average = est.mean;
  r.std_error = est.std_error;
  r.product = f(x) * f(y);
  r.residual = std::abs(r.average - r.product);
  return r;
}

KQuadrature circle_quadrature(const LauretAlgebra& alg, int nodes) {
  if (nodes < 1 || alg.dim_V() % 2) throw std::invalid_argument("circle_quadrature: need V = C^n");
  KQuadrature q;
  for (int i = 0; i < nodes; ++i) {
    double th = 2 * M_PI * i / nodes;
    MatrixXd rot = MatrixXd::Zero(alg.dim_V(), alg.dim_V());
    for (int p = 0; p < alg.dim_V() / 2; ++p) {
      rot(2 * p, 2 * p) = rot(2 * p + 1, 2 * p + 1) = std::cos(th);
      rot(2 * p + 1, 2 * p) = std::sin(th);
      rot(2 * p, 2 * p + 1) = -std::sin(th);
    }
    q.nodes.push_back({MatrixXd::Identity(alg.dim_g(), alg.dim_g()), rot});
    q.weights.push_back(1.0 / nodes);
  }
  return q;
}

KMonteCarlo k_sampler(const LauretAlgebra& alg, std::size_t samples, std::uint64_t seed) {
  auto gp = alg.gprime_group();
  auto u = alg.u_group();
  if (!gp && !u) throw std::invalid_argument("k_sampler: K is trivial");
  KMonteCarlo k;
  k.samples = samples;
  k.seed = seed;
  const LauretAlgebra* a = &alg;
  if (gp && u) {
    k.group = numerics::GroupSpec::product({*gp, *u});
    const int dg = gp->matrix_dim(), du = u->matrix_dim();
    k.action = [a, dg, du](const MatrixXcd& m) {
      OrthAutomorphism r = a->gprime_automorphism(m.topLeftCorner(dg, dg));
      r.V_part = a->u_automorphism(m.bottomRightCorner(du, du)).V_part * r.V_part;
      return r;
    };
  } else if (gp) {
    k.group = *gp;
    k.action = [a](const MatrixXcd& m) { return a->gprime_automorphism(m); };
  } else {
    k.group = *u;
    k.action = [a](const MatrixXcd& m) { return a->u_automorphism(m); };
  }
  return k;
}

}  // namespace nilharm::spherical
