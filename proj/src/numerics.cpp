#include "nilharm/numerics.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>

#include <omp.h>

namespace nilharm::numerics {

double laguerre(int k, double alpha, double x) {
  if (k < 0) throw std::invalid_argument("laguerre: negative degree");
  if (alpha <= -1.0) throw std::domain_error("laguerre: alpha must exceed -1");
  double prev = 1.0;
  if (k == 0) return prev;
  double cur = 1.0 + alpha - x;
  for (int m = 1; m < k; ++m) {
    double next = ((2.0 * m + 1.0 + alpha - x) * cur - (m + alpha) * prev) / (m + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

void laguerre_all(int kmax, double alpha, double x, std::span<double> out) {
  if (kmax < 0 || out.size() < static_cast<std::size_t>(kmax) + 1)
    throw std::invalid_argument("laguerre_all: output too small");
  out[0] = 1.0;
  if (kmax == 0) return;
  out[1] = 1.0 + alpha - x;
  for (int m = 1; m < kmax; ++m)
    out[m + 1] = ((2.0 * m + 1.0 + alpha - x) * out[m] - (m + alpha) * out[m - 1]) / (m + 1.0);
}

double sphere_character(double a) {
  if (std::abs(a) < 1e-4) {
    double a2 = a * a;
    return 1.0 - a2 / 6.0 + a2 * a2 / 120.0;
  }
  return std::sin(a) / a;
}

QuadratureSpec QuadratureSpec::box(int dim, double half_width, int nodes, Rule rule) {
  QuadratureSpec s;
  s.nodes = nodes;
  s.lower.assign(dim, -half_width);
  s.upper.assign(dim, half_width);
  s.rule = rule;
  return s;
}

double QuadratureSpec::total_nodes() const { return std::pow(double(nodes), dim()); }

double gaussian_half_width(double decay, double tol) {
  if (decay <= 0.0) throw std::invalid_argument("gaussian_half_width: decay must be positive");
  return std::sqrt(-std::log(tol) / decay);
}

Rule1D gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  Rule1D r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = w;
    r.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
  return r;
}

Rule1D rule_on(Rule rule, int n, double a, double b) {
  Rule1D r;
  if (rule == Rule::GaussLegendre) {
    r = gauss_legendre(n);
    double h = 0.5 * (b - a), c = 0.5 * (b + a);
    for (int i = 0; i < n; ++i) {
      r.x[i] = c + h * r.x[i];
      r.w[i] *= h;
    }
    return r;
  }
  if (n < 2) throw std::invalid_argument("trapezoid needs at least two nodes");
  r.x.resize(n);
  r.w.resize(n);
  double h = (b - a) / (n - 1);
  for (int i = 0; i < n; ++i) {
    r.x[i] = a + h * i;
    r.w[i] = (i == 0 || i == n - 1) ? 0.5 * h : h;
  }
  return r;
}

double budget() {
  if (const char* env = std::getenv("NILHARM_BUDGET")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0) return v;
  }
  return 2e8;
}

void check_budget(double evaluations, const std::string& what) {
  if (evaluations > budget())
    throw BudgetExceeded(what + ": " + std::to_string(evaluations) +
                         " evaluations exceed budget " + std::to_string(budget()));
}

namespace {

struct Grid {
  std::vector<Rule1D> axes;
  std::size_t inner = 1;  // nodes per outer slab
};

Grid make_grid(const QuadratureSpec& spec) {
  if (spec.dim() == 0 || spec.upper.size() != spec.lower.size())
    throw std::invalid_argument("grid_quadrature: malformed box");
  check_budget(spec.total_nodes(), "grid_quadrature");
  Grid g;
  for (int d = 0; d < spec.dim(); ++d) {
    if (!(spec.upper[d] > spec.lower[d]))
      throw std::invalid_argument("grid_quadrature: empty axis");
    g.axes.push_back(rule_on(spec.rule, spec.nodes, spec.lower[d], spec.upper[d]));
  }
  for (int d = 1; d < spec.dim(); ++d) g.inner *= spec.nodes;
  return g;
}

// Sum over all nodes whose first coordinate is axis-0 node i0.
cplx slab_sum(const Integrand& f, const Grid& g, int i0) {
  const int dim = static_cast<int>(g.axes.size());
  const int n = static_cast<int>(g.axes[0].x.size());
  std::vector<int> idx(dim, 0);
  std::vector<double> x(dim);
  idx[0] = i0;
  cplx acc = 0.0;
  for (std::size_t flat = 0; flat < g.inner; ++flat) {
    std::size_t rem = flat;
    double w = g.axes[0].w[i0];
    x[0] = g.axes[0].x[i0];
    for (int d = dim - 1; d >= 1; --d) {
      idx[d] = static_cast<int>(rem % n);
      rem /= n;
      x[d] = g.axes[d].x[idx[d]];
      w *= g.axes[d].w[idx[d]];
    }
    acc += w * f(x);
  }
  return acc;
}

}  // namespace

cplx grid_quadrature_serial(const Integrand& f, const QuadratureSpec& spec) {
  Grid g = make_grid(spec);
  cplx total = 0.0;
  for (int i = 0; i < spec.nodes; ++i) total += slab_sum(f, g, i);
  return total;
}

cplx grid_quadrature(const Integrand& f, const QuadratureSpec& spec) {
  Grid g = make_grid(spec);
  std::vector<cplx> slabs(spec.nodes);
  std::exception_ptr err;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < spec.nodes; ++i) {
    try {
      slabs[i] = slab_sum(f, g, i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  cplx total = 0.0;
  for (const cplx& s : slabs) total += s;
  return total;
}

// ------------------------------------------------------------------ Haar

int GroupSpec::matrix_dim() const {
  switch (kind) {
    case Kind::Sp:
      return 2 * n;
    case Kind::Product: {
      int d = 0;
      for (const auto& f : factors) d += f.matrix_dim();
      return d;
    }
    default:
      return n;
  }
}

Eigen::MatrixXcd quaternionic_structure(int n) {
  Eigen::MatrixXcd om = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    om(2 * i + 1, 2 * i) = 1.0;
    om(2 * i, 2 * i + 1) = -1.0;
  }
  return om;
}

namespace {

Eigen::MatrixXcd gaussian_complex(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd a(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      double re = nd(rng);
      double im = nd(rng);
      a(i, j) = cplx(re, im);
    }
  return a;
}

Eigen::MatrixXcd haar_unitary(int n, std::mt19937_64& rng) {
  Eigen::MatrixXcd a = gaussian_complex(n, n, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    cplx d = r(j, j);
    double m = std::abs(d);
    q.col(j) *= (m > 0 ? d / m : cplx(1.0));
  }
  return q;
}

Eigen::MatrixXcd haar_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = nd(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  for (int j = 0; j < n; ++j)
    if (qr.matrixQR()(j, j) < 0) q.col(j) *= -1.0;
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q.cast<cplx>();
}

Eigen::MatrixXcd haar_symplectic(int n, std::mt19937_64& rng) {
  const int d = 2 * n;
  Eigen::MatrixXcd om = quaternionic_structure(n);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd x = gaussian_complex(d, 1, rng).col(0);
    for (int pass = 0; pass < 2; ++pass)
      for (int c = 0; c < 2 * k; ++c) x -= u.col(c) * u.col(c).dot(x);
    x.normalize();
    u.col(2 * k) = x;
    u.col(2 * k + 1) = om * x.conjugate();
  }
  return u;
}

}  // namespace

Eigen::MatrixXcd haar_sample(const GroupSpec& g, std::mt19937_64& rng) {
  if (g.kind != GroupSpec::Kind::Product && g.n < 1)
    throw std::invalid_argument("haar_sample: group rank must be positive");
  switch (g.kind) {
    case GroupSpec::Kind::SO:
      return haar_orthogonal(g.n, rng);
    case GroupSpec::Kind::U:
      return haar_unitary(g.n, rng);
    case GroupSpec::Kind::SU: {
      Eigen::MatrixXcd u = haar_unitary(g.n, rng);
      cplx det = u.determinant();
      return u * std::pow(det, -1.0 / g.n);
    }
    case GroupSpec::Kind::Sp:
      return haar_symplectic(g.n, rng);
    case GroupSpec::Kind::Torus: {
      std::uniform_real_distribution<double> ud(0.0, 2.0 * std::numbers::pi);
      Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(g.n, g.n);
      for (int i = 0; i < g.n; ++i) t(i, i) = std::polar(1.0, ud(rng));
      return t;
    }
    case GroupSpec::Kind::Product: {
      const int d = g.matrix_dim();
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
      int off = 0;
      for (const auto& f : g.factors) {
        int s = f.matrix_dim();
        m.block(off, off, s, s) = haar_sample(f, rng);
        off += s;
      }
      return m;
    }
  }
  throw std::invalid_argument("haar_sample: unknown group");
}

std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t batch) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (batch + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// ------------------------------------------------------------------ MC

namespace {

// Welford accumulator; batches are merged in index order.
struct Moments {
  std::size_t n = 0;
  Eigen::VectorXcd mean;
  Eigen::VectorXd m2;

  explicit Moments(int dim = 1) : mean(Eigen::VectorXcd::Zero(dim)), m2(Eigen::VectorXd::Zero(dim)) {}

  void push(const Eigen::VectorXcd& x) {
    ++n;
    Eigen::VectorXcd delta = x - mean;
    mean += delta / double(n);
    m2 += (delta.conjugate().cwiseProduct(x - mean)).real();
  }

  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    double na = double(n), nb = double(o.n), nt = na + nb;
    Eigen::VectorXcd delta = o.mean - mean;
    mean += delta * (nb / nt);
    m2 += o.m2 + delta.cwiseAbs2() * (na * nb / nt);
    n += o.n;
  }
};

Moments run_batch(const HaarVectorIntegrand& f, int dim, const GroupSpec& g,
                  std::size_t samples, std::uint64_t seed, std::size_t b) {
  std::mt19937_64 rng(batch_seed(seed, b));
  Moments m(dim);
  std::size_t lo = b * kBatch, hi = std::min(samples, lo + kBatch);
  for (std::size_t s = lo; s < hi; ++s) {
    Eigen::VectorXcd v = f(haar_sample(g, rng));
    if (v.size() != dim) throw std::invalid_argument("mc_integrate: integrand size mismatch");
    m.push(v);
  }
  return m;
}

std::vector<MCEstimate> finish(const Moments& m, std::uint64_t seed) {
  std::vector<MCEstimate> out(m.mean.size());
  for (int i = 0; i < m.mean.size(); ++i) {
    out[i].mean = m.mean(i);
    out[i].samples = m.n;
    out[i].seed = seed;
    out[i].std_error = m.n > 1 ? std::sqrt(m.m2(i) / double(m.n - 1) / double(m.n)) : 0.0;
  }
  return out;
}

std::size_t batch_count(std::size_t samples) {
  if (samples == 0) throw std::invalid_argument("mc_integrate: zero samples");
  return (samples + kBatch - 1) / kBatch;
}

HaarVectorIntegrand lift(const HaarIntegrand& f) {
  return [&f](const Eigen::MatrixXcd& g) {
    Eigen::VectorXcd v(1);
    v(0) = f(g);
    return v;
  };
}

}  // namespace

std::vector<MCEstimate> mc_integrate_vec_serial(const HaarVectorIntegrand& f, int dim,
                                                const GroupSpec& g, std::size_t samples,
                                                std::uint64_t seed) {
  std::size_t nb = batch_count(samples);
  Moments total(dim);
  for (std::size_t b = 0; b < nb; ++b) total.merge(run_batch(f, dim, g, samples, seed, b));
  return finish(total, seed);
}

std::vector<MCEstimate> mc_integrate_vec(const HaarVectorIntegrand& f, int dim,
                                         const GroupSpec& g, std::size_t samples,
                                         std::uint64_t seed) {
  std::size_t nb = batch_count(samples);
  std::vector<Moments> parts(nb, Moments(dim));
  std::exception_ptr err;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic)
  for (long b = 0; b < static_cast<long>(nb); ++b) {
    try {
      parts[b] = run_batch(f, dim, g, samples, seed, b);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  Moments total(dim);
  for (const auto& p : parts) total.merge(p);
  return finish(total, seed);
}

MCEstimate mc_integrate(const HaarIntegrand& f, const GroupSpec& g, std::size_t samples,
                        std::uint64_t seed) {
  return mc_integrate_vec(lift(f), 1, g, samples, seed)[0];
}

MCEstimate mc_integrate_serial(const HaarIntegrand& f, const GroupSpec& g,
                               std::size_t samples, std::uint64_t seed) {
  return mc_integrate_vec_serial(lift(f), 1, g, samples, seed)[0];
}

}  // namespace nilharm::numerics
