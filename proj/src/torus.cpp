#include "nilharm/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <regex>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "nilharm/quaternion.hpp"

namespace nilharm::torus {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

std::string Factor::name() const {
  switch (kind) {
    case Kind::SU: return "su(" + std::to_string(n) + ")";
    case Kind::SO: return "so(" + std::to_string(n) + ")";
    case Kind::SP: return "sp(" + std::to_string(n) + ")";
  }
  return "?";
}

double Factor::kappa() const { return (kind == Kind::SU && n >= 3) ? 1.0 : 0.5; }

std::vector<Factor> parse_algebra(const std::string& s) {
  static const std::regex term(R"(\s*(su|so|sp)\((\d+)\)\s*)");
  std::vector<Factor> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t plus = s.find('+', pos);
    std::string part = s.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
    std::smatch m;
    if (!std::regex_match(part, m, term)) throw std::invalid_argument("unknown algebra: " + s);
    int n = std::stoi(m[2]);
    Factor::Kind k = m[1] == "su" ? Factor::Kind::SU : m[1] == "so" ? Factor::Kind::SO : Factor::Kind::SP;
    if ((k == Factor::Kind::SU && n < 2) || (k == Factor::Kind::SO && n < 2) ||
        (k == Factor::Kind::SP && n < 1))
      throw std::invalid_argument("algebra rank out of range: " + part);
    out.push_back({k, n});
    if (plus == std::string::npos) break;
    pos = plus + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty algebra spec");
  return out;
}

namespace {

using cd = std::complex<double>;
const cd I(0.0, 1.0);

MatrixXcd unit_matrix(int d, int a, int b) {
  MatrixXcd m = MatrixXcd::Zero(d, d);
  m(a, b) = 1.0;
  return m;
}

// Helmert vectors: orthonormal basis of the trace-zero diagonal.
std::vector<VectorXd> helmert(int n) {
  std::vector<VectorXd> u;
  for (int k = 1; k < n; ++k) {
    VectorXd v = VectorXd::Zero(n);
    v.head(k).setOnes();
    v(k) = -k;
    u.push_back(v / std::sqrt(double(k) * (k + 1)));
  }
  return u;
}

struct FactorData {
  std::vector<MatrixXcd> torus;
  std::vector<MatrixXcd> rest;
  std::vector<VectorXd> roots, positive;
};

FactorData build_su(int n, double kappa) {
  FactorData f;
  double s = 1.0 / std::sqrt(kappa);
  auto u = helmert(n);
  if (n == 2) {
    // quaternion units i, j, k
    f.torus.push_back(quat::chi(quat::unit(1)));
    f.rest.push_back(quat::chi(quat::unit(2)));
    f.rest.push_back(quat::chi(quat::unit(3)));
  } else {
    for (const auto& v : u) f.torus.push_back(I * (v * s).cast<cd>().asDiagonal().toDenseMatrix());
    double t = 1.0 / std::sqrt(2.0 * kappa);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        f.rest.push_back(t * (unit_matrix(n, a, b) - unit_matrix(n, b, a)));
        f.rest.push_back(t * I * (unit_matrix(n, a, b) + unit_matrix(n, b, a)));
      }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      VectorXd r(n - 1);
      for (int k = 0; k < n - 1; ++k) r(k) = s * (u[k](a) - u[k](b));
      f.roots.push_back(r);
      if (a < b) f.positive.push_back(r);
    }
  return f;
}

FactorData build_so(int n) {
  FactorData f;
  const int m = n / 2;
  for (int k = 0; k < m; ++k)
    f.torus.push_back(unit_matrix(n, 2 * k + 1, 2 * k) - unit_matrix(n, 2 * k, 2 * k + 1));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (b == a + 1 && a % 2 == 0 && b < 2 * m) continue;
      f.rest.push_back(unit_matrix(n, b, a) - unit_matrix(n, a, b));
    }
  auto e = [m](int i) {
    VectorXd v = VectorXd::Zero(m);
    v(i) = 1.0;
    return v;
  };
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      f.positive.push_back(e(i) - e(j));
      f.positive.push_back(e(i) + e(j));
    }
    if (n % 2 == 1) f.positive.push_back(e(i));
  }
  for (const auto& r : f.positive) {
    f.roots.push_back(r);
    f.roots.push_back(-r);
  }
  return f;
}

FactorData build_sp(int n) {
  FactorData f;
  const int d = 2 * n;
  auto place = [d](int a, int b, const Eigen::Matrix2cd& blk) {
    MatrixXcd m = MatrixXcd::Zero(d, d);
    m.block<2, 2>(2 * a, 2 * b) = blk;
    return m;
  };
  for (int a = 0; a < n; ++a) f.torus.push_back(place(a, a, quat::chi(quat::unit(1))));
  for (int a = 0; a < n; ++a)
    for (int ax : {2, 3}) f.rest.push_back(place(a, a, quat::chi(quat::unit(ax))));
  const double t = 1.0 / std::sqrt(2.0);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int ax = 0; ax < 4; ++ax) {
        Eigen::Matrix2cd c = quat::chi(quat::unit(ax));
        f.rest.push_back(t * (place(a, b, c) - place(b, a, c.adjoint())));
      }
  auto e = [n](int i) {
    VectorXd v = VectorXd::Zero(n);
    v(i) = 1.0;
    return v;
  };
  for (int i = 0; i < n; ++i) {
    f.positive.push_back(2 * e(i));
    for (int j = i + 1; j < n; ++j) {
      f.positive.push_back(e(i) - e(j));
      f.positive.push_back(e(i) + e(j));
    }
  }
  for (const auto& r : f.positive) {
    f.roots.push_back(r);
    f.roots.push_back(-r);
  }
  return f;
}

}  // namespace

RootSystem::RootSystem(std::vector<Factor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("RootSystem: no factors");
  for (const auto& f : factors_) {
    offsets_.push_back(mdim_);
    mdim_ += f.matrix_dim();
  }
  std::vector<FactorData> data;
  int total_rank = 0;
  for (const auto& f : factors_) {
    switch (f.kind) {
      case Factor::Kind::SU: data.push_back(build_su(f.n, f.kappa())); break;
      case Factor::Kind::SO: data.push_back(build_so(f.n)); break;
      case Factor::Kind::SP: data.push_back(build_sp(f.n)); break;
    }
    total_rank += static_cast<int>(data.back().torus.size());
  }
  auto embed = [this](std::size_t fi, const MatrixXcd& m) {
    MatrixXcd out = MatrixXcd::Zero(mdim_, mdim_);
    int s = factors_[fi].matrix_dim();
    out.block(offsets_[fi], offsets_[fi], s, s) = m;
    return out;
  };
  int rank_off = 0;
  for (std::size_t fi = 0; fi < factors_.size(); ++fi) {
    const auto& d = data[fi];
    for (const auto& t : d.torus) {
      torus_.push_back(embed(fi, t));
      basis_.push_back(torus_.back());
      basis_factor_.push_back(static_cast<int>(fi));
    }
    for (const auto& r : d.rest) {
      basis_.push_back(embed(fi, r));
      basis_factor_.push_back(static_cast<int>(fi));
    }
    auto lift = [&](const VectorXd& r) {
      VectorXd v = VectorXd::Zero(total_rank);
      v.segment(rank_off, r.size()) = r;
      return v;
    };
    for (const auto& r : d.roots) roots_.push_back(lift(r));
    for (const auto& r : d.positive) positive_.push_back(lift(r));
    rank_off += static_cast<int>(d.torus.size());
  }
}

double RootSystem::inner(const MatrixXcd& a, const MatrixXcd& b) const {
  double s = 0.0;
  for (std::size_t fi = 0; fi < factors_.size(); ++fi) {
    int o = offsets_[fi], d = factors_[fi].matrix_dim();
    s += factors_[fi].kappa() *
         (a.block(o, o, d, d).adjoint() * b.block(o, o, d, d)).trace().real();
  }
  return s;
}

VectorXd RootSystem::coords(const MatrixXcd& x) const {
  VectorXd c(dim());
  for (int i = 0; i < dim(); ++i) c(i) = inner(basis_[i], x);
  return c;
}

MatrixXcd RootSystem::matrix(const VectorXd& c) const {
  if (c.size() != dim()) throw std::invalid_argument("RootSystem::matrix: wrong size");
  MatrixXcd m = MatrixXcd::Zero(mdim_, mdim_);
  for (int i = 0; i < dim(); ++i) m += c(i) * basis_[i];
  return m;
}

MatrixXcd RootSystem::torus_matrix(const VectorXd& h) const {
  if (h.size() != rank()) throw std::invalid_argument("RootSystem::torus_matrix: wrong size");
  MatrixXcd m = MatrixXcd::Zero(mdim_, mdim_);
  for (int i = 0; i < rank(); ++i) m += h(i) * torus_[i];
  return m;
}

VectorXd RootSystem::torus_coords(const MatrixXcd& x) const {
  VectorXd h(rank());
  for (int i = 0; i < rank(); ++i) h(i) = inner(torus_[i], x);
  return h;
}

MatrixXd RootSystem::Ad(const MatrixXcd& g) const {
  MatrixXd m(dim(), dim());
  MatrixXcd gi = g.adjoint();
  for (int i = 0; i < dim(); ++i) m.col(i) = coords(g * basis_[i] * gi);
  return m;
}

MatrixXd RootSystem::ad(const MatrixXcd& x) const {
  MatrixXd m(dim(), dim());
  for (int i = 0; i < dim(); ++i) m.col(i) = coords(x * basis_[i] - basis_[i] * x);
  return m;
}

numerics::GroupSpec RootSystem::group() const {
  std::vector<numerics::GroupSpec> parts;
  for (const auto& f : factors_) {
    switch (f.kind) {
      case Factor::Kind::SU: parts.push_back(numerics::GroupSpec::su(f.n)); break;
      case Factor::Kind::SO: parts.push_back(numerics::GroupSpec::so(f.n)); break;
      case Factor::Kind::SP: parts.push_back(numerics::GroupSpec::sp(f.n)); break;
    }
  }
  if (parts.size() == 1) return parts[0];
  return numerics::GroupSpec::product(std::move(parts));
}

bool RootSystem::in_chamber(const VectorXd& h, double tol) const {
  for (const auto& r : positive_)
    if (r.dot(h) < -tol) return false;
  return true;
}

bool RootSystem::is_regular(const VectorXd& h, double tol) const {
  for (const auto& r : positive_)
    if (std::abs(r.dot(h)) <= tol) return false;
  return true;
}

RootSystem root_system(const std::string& spec) { return RootSystem(parse_algebra(spec)); }

double theta(const RootSystem& rs, const VectorXd& h) {
  if (h.size() != rs.rank()) throw std::invalid_argument("theta: wrong torus dimension");
  double p = 1.0;
  for (const auto& r : rs.roots()) p *= std::abs(r.dot(h));
  return p;
}

namespace {

// g with g x g^H diagonal, decreasing imaginary parts, det g = 1.
MatrixXcd chamber_su(const MatrixXcd& x) {
  const int n = static_cast<int>(x.rows());
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(-I * x);
  MatrixXcd v = es.eigenvectors().rowwise().reverse();
  cd det = v.determinant();
  v.col(0) *= std::conj(det) / std::abs(det);
  (void)n;
  return v.adjoint();
}

MatrixXcd chamber_so(const MatrixXcd& xc) {
  const int n = static_cast<int>(xc.rows());
  MatrixXd a = xc.real();
  Eigen::RealSchur<MatrixXd> rs(a);
  MatrixXd u = rs.matrixU();
  const MatrixXd& t = rs.matrixT();
  // collect 2x2 blocks and 1x1 blocks
  struct Plane { int c0, c1; double theta; };
  std::vector<Plane> planes;
  std::vector<int> singles;
  for (int i = 0; i < n;) {
    if (i + 1 < n && t(i + 1, i) != 0.0) {
      planes.push_back({i, i + 1, t(i + 1, i)});
      i += 2;
    } else {
      singles.push_back(i++);
    }
  }
  for (std::size_t s = 0; s + 1 < singles.size(); s += 2)
    planes.push_back({singles[s], singles[s + 1], 0.0});
  int odd = singles.size() % 2 ? singles.back() : -1;
  std::stable_sort(planes.begin(), planes.end(),
                   [](const Plane& p, const Plane& q) { return std::abs(p.theta) > std::abs(q.theta); });
  MatrixXd w(n, n);
  int col = 0;
  for (auto& p : planes) {
    // block acts as theta [[0,-1],[1,0]] on (c0, c1); swapping flips the sign
    if (p.theta < 0) std::swap(p.c0, p.c1);
    w.col(col++) = u.col(p.c0);
    w.col(col++) = u.col(p.c1);
  }
  if (odd >= 0) w.col(col++) = u.col(odd);
  if (w.determinant() < 0) {
    if (odd >= 0)
      w.col(n - 1) *= -1.0;
    else
      w.col(n - 1).swap(w.col(n - 2));
  }
  return w.transpose().cast<cd>();
}

MatrixXcd chamber_sp(const MatrixXcd& x) {
  const int d = static_cast<int>(x.rows()), n = d / 2;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(-I * x);
  MatrixXcd vecs = es.eigenvectors().rowwise().reverse();
  MatrixXcd om = numerics::quaternionic_structure(n);
  MatrixXcd u = MatrixXcd::Zero(d, d);
  int k = 0;
  for (int c = 0; c < d && k < n; ++c) {
    Eigen::VectorXcd w = vecs.col(c);
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < 2 * k; ++j) w -= u.col(j) * u.col(j).dot(w);
    double nw = w.norm();
    if (nw < 0.5) continue;
    w /= nw;
    u.col(2 * k) = w;
    u.col(2 * k + 1) = om * w.conjugate();
    ++k;
  }
  if (k != n) throw std::domain_error("to_chamber: quaternionic frame construction failed");
  return u.adjoint();
}

}  // namespace

ChamberPoint to_chamber(const RootSystem& rs, const MatrixXcd& x) {
  if (x.rows() != rs.matrix_dim() || x.cols() != rs.matrix_dim())
    throw std::invalid_argument("to_chamber: wrong matrix size");
  if ((x + x.adjoint()).norm() > 1e-9 * (1.0 + x.norm()))
    throw std::invalid_argument("to_chamber: matrix is not skew-Hermitian");
  MatrixXcd g = MatrixXcd::Zero(rs.matrix_dim(), rs.matrix_dim());
  int off = 0;
  for (const auto& f : rs.factors()) {
    int s = f.matrix_dim();
    MatrixXcd blk = x.block(off, off, s, s);
    switch (f.kind) {
      case Factor::Kind::SU: g.block(off, off, s, s) = chamber_su(blk); break;
      case Factor::Kind::SO: g.block(off, off, s, s) = chamber_so(blk); break;
      case Factor::Kind::SP: g.block(off, off, s, s) = chamber_sp(blk); break;
    }
    off += s;
  }
  ChamberPoint cp;
  cp.g = g;
  cp.h = rs.torus_coords(g * x * g.adjoint());
  return cp;
}

long long dim_gl(int k, const std::vector<int>& lambda) {
  if (static_cast<int>(lambda.size()) > k) {
    for (std::size_t i = k; i < lambda.size(); ++i)
      if (lambda[i] != 0) return 0;
  }
  std::vector<long double> l(k, 0.0L);
  for (int i = 0; i < k && i < static_cast<int>(lambda.size()); ++i) l[i] = lambda[i];
  long double num = 1.0L, den = 1.0L;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      num *= (l[i] - l[j] + j - i);
      den *= (j - i);
    }
  return std::llround(num / den);
}

long long dim_sp(int n, const std::vector<int>& lambda) {
  for (std::size_t i = n; i < lambda.size(); ++i)
    if (lambda[i] != 0) return 0;
  std::vector<long double> l(n), rho(n);
  for (int i = 0; i < n; ++i) {
    rho[i] = n - i;
    l[i] = (i < static_cast<int>(lambda.size()) ? lambda[i] : 0) + rho[i];
  }
  long double num = 1.0L, den = 1.0L;
  for (int i = 0; i < n; ++i) {
    num *= l[i];
    den *= rho[i];
    for (int j = i + 1; j < n; ++j) {
      num *= (l[i] * l[i] - l[j] * l[j]);
      den *= (rho[i] * rho[i] - rho[j] * rho[j]);
    }
  }
  return std::llround(num / den);
}

}  // namespace nilharm::torus
