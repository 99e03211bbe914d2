#include "nilharm/fock.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nilharm/torus.hpp"

namespace nilharm::fock {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using algebra::Case;

std::vector<MultiIndex> monomials(int n, int d) {
  std::vector<MultiIndex> out;
  if (n == 0) {
    if (d == 0) out.push_back({});
    return out;
  }
  // graded-lex: first exponent descending
  MultiIndex m(n, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n - 1) {
      m[pos] = left;
      out.push_back(m);
      return;
    }
    for (int a = left; a >= 0; --a) {
      m[pos] = a;
      rec(pos + 1, left - a);
    }
  };
  rec(0, d);
  return out;
}

FockBasis::FockBasis(int n, int max_degree) : n_(n), D_(max_degree) {
  if (n < 1 || max_degree < 0) throw std::invalid_argument("FockBasis: need n >= 1, D >= 0");
  for (int d = 0; d <= D_; ++d)
    for (auto& m : monomials(n, d)) {
      pos_[m] = static_cast<int>(idx_.size());
      idx_.push_back(std::move(m));
    }
}

int FockBasis::position(const MultiIndex& m) const {
  auto it = pos_.find(m);
  return it == pos_.end() ? -1 : it->second;
}

int FockBasis::degree(const MultiIndex& m) { return std::accumulate(m.begin(), m.end(), 0); }

double FockBasis::norm2(const MultiIndex& m, double lam) {
  double s = 1.0;
  for (int a : m) s *= std::tgamma(a + 1.0) * std::pow(2.0 / std::abs(lam), a);
  return s;
}

std::vector<int> FockBasis::up_to_degree(int d) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (degree(idx_[i]) <= d) out.push_back(i);
  return out;
}

cplx displacement_entry(int k, int m, cplx alpha) {
  if (k < 0 || m < 0) throw std::invalid_argument("displacement_entry: negative index");
  cplx s = 0.0;
  const cplx na = -std::conj(alpha);
  for (int p = 0; p <= std::min(k, m); ++p) {
    double binom = std::exp(std::lgamma(m + 1.0) - std::lgamma(p + 1.0) - std::lgamma(m - p + 1.0));
    s += binom * std::pow(alpha, m - p) * std::pow(na, k - p) / std::tgamma(k - p + 1.0);
  }
  double pref = std::exp(-0.5 * std::norm(alpha) + 0.5 * (std::lgamma(k + 1.0) - std::lgamma(m + 1.0)));
  return pref * s;
}

namespace {

void require_lambda(double lam) {
  if (lam == 0.0) throw std::invalid_argument("Fock model needs lambda != 0");
}

VectorXcd alphas(double lam, const VectorXcd& v) { return std::sqrt(std::abs(lam) / 2.0) * v; }

// product over coordinates of the 1-D entries for |lam|, conjugated if lam < 0
cplx entry(double lam, const MultiIndex& k, const MultiIndex& m, const VectorXcd& a) {
  cplx p = 1.0;
  for (std::size_t i = 0; i < k.size(); ++i) p *= displacement_entry(k[i], m[i], a(i));
  return lam < 0 ? std::conj(p) : p;
}

}  // namespace

MatrixXcd pi_matrix(double lam, double t, const VectorXcd& v, const FockBasis& basis) {
  require_lambda(lam);
  if (v.size() != basis.n()) throw std::invalid_argument("pi_matrix: v has wrong dimension");
  VectorXcd a = alphas(lam, v);
  const int N = basis.size();
  MatrixXcd M(N, N);
  cplx c = std::polar(1.0, lam * t);
  // tabulate 1-D entries once per coordinate
  const int D = basis.max_degree();
  std::vector<MatrixXcd> one(basis.n(), MatrixXcd(D + 1, D + 1));
  for (int i = 0; i < basis.n(); ++i)
    for (int k = 0; k <= D; ++k)
      for (int m = 0; m <= D; ++m) one[i](k, m) = displacement_entry(k, m, a(i));
  for (int r = 0; r < N; ++r)
    for (int s = 0; s < N; ++s) {
      cplx p = 1.0;
      for (int i = 0; i < basis.n(); ++i) p *= one[i](basis.index(r)[i], basis.index(s)[i]);
      M(r, s) = c * (lam < 0 ? std::conj(p) : p);
    }
  return M;
}

cplx matrix_coefficient(double lam, const MultiIndex& h, const MultiIndex& hp, double t,
                        const VectorXcd& v) {
  require_lambda(lam);
  if (h.size() != hp.size() || static_cast<int>(h.size()) != v.size())
    throw std::invalid_argument("matrix_coefficient: dimension mismatch");
  return std::polar(1.0, lam * t) * entry(lam, hp, h, alphas(lam, v));
}

cplx matrix_coefficient(double lam, const VectorXcd& h, const VectorXcd& hp, double t,
                        const VectorXcd& v, const FockBasis& basis) {
  if (h.size() != basis.size() || hp.size() != basis.size())
    throw std::invalid_argument("matrix_coefficient: vectors not in the truncated space");
  return hp.dot(pi_matrix(lam, t, v, basis) * h);
}

std::vector<int> heisenberg_layout(const algebra::CaseSpec& spec) {
  if (spec.kind == Case::II || (spec.kind == Case::VI && spec.n % 2 == 1))
    throw std::invalid_argument("case " + spec.label() + " has no square-integrable layout");
  return algebra::build_case(spec).layout();
}

namespace {

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  return std::llround(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

// dim of homogeneous degree-d polynomials in n variables
long long sym_dim(int n, int d) { return n == 0 ? (d == 0) : binom(n + d - 1, d); }

// Monomials of a product of blocks with fixed degree per block.
std::vector<MultiIndex> block_monomials(const std::vector<int>& layout, const std::vector<int>& deg) {
  std::vector<MultiIndex> acc{{}};
  for (std::size_t b = 0; b < layout.size(); ++b) {
    std::vector<MultiIndex> next;
    for (const auto& head : acc)
      for (const auto& tail : monomials(layout[b], deg[b])) {
        MultiIndex m = head;
        m.insert(m.end(), tail.begin(), tail.end());
        next.push_back(std::move(m));
      }
    acc = std::move(next);
  }
  return acc;
}

// all compositions of total <= D into `parts` nonnegative integers, by total
std::vector<std::vector<int>> degree_vectors(int parts, int D) {
  std::vector<std::vector<int>> out;
  for (int d = 0; d <= D; ++d)
    for (auto& m : monomials(parts, d)) out.push_back(m);
  return out;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

std::vector<MetaplecticComponent> metaplectic_components(const algebra::CaseSpec& spec, int D) {
  spec.validate();
  if (D < 0) throw std::invalid_argument("metaplectic_components: D < 0");
  std::vector<MetaplecticComponent> out;
  auto with_basis = [&](const std::vector<int>& layout, const std::vector<int>& deg,
                        const std::vector<int>& index) {
    MetaplecticComponent c;
    c.index = index;
    c.label = spec.label() + "[" + join(index) + "]";
    c.basis = block_monomials(layout, deg);
    c.dim = static_cast<long long>(c.basis.size());
    out.push_back(std::move(c));
  };
  const int n = spec.n;
  switch (spec.kind) {
    case Case::VII:
      for (int j = 0; j <= D; ++j) with_basis({n}, {j}, {j});
      break;
    case Case::I:
      for (int j = 0; j <= D; ++j) with_basis({2 * n}, {j}, {j});
      break;
    case Case::V:
    case Case::IX:
    case Case::VI: {
      std::vector<int> layout = heisenberg_layout(spec);
      for (const auto& m : degree_vectors(static_cast<int>(layout.size()), D)) with_basis(layout, m, m);
      break;
    }
    case Case::III: {
      std::vector<int> layout = heisenberg_layout(spec);
      // blocks: [2k1], 1, 1, [2k2]; index (j, l1, l2, s) with zero for absent blocks
      for (const auto& deg : degree_vectors(static_cast<int>(layout.size()), D)) {
        std::vector<int> idx;
        std::size_t b = 0;
        idx.push_back(spec.k1 > 0 ? deg[b++] : 0);
        idx.push_back(deg[b++]);
        idx.push_back(deg[b++]);
        idx.push_back(spec.k2 > 0 ? deg[b++] : 0);
        with_basis(layout, deg, idx);
      }
      break;
    }
    case Case::IV:
      // eta_r (x) eta_s = sum_{j <= min(r,s)} sum_{i <= j} eta_{(r+s-j-i, j-i)}
      for (int tot = 0; tot <= D; ++tot)
        for (int r = tot; r >= 0; --r) {
          int s = tot - r;
          for (int j = 0; j <= std::min(r, s); ++j)
            for (int i = 0; i <= j; ++i) {
              long long d = torus::dim_sp(n, {r + s - j - i, j - i});
              if (d == 0) continue;
              out.push_back({spec.label() + "[" + join({r, s, j, i}) + "]", {r, s, j, i}, d, {}});
            }
        }
      break;
    case Case::VIII:
      // Sym^r (x) Sym^s of U(k) = sum_{j <= min(r,s)} S_{(r+s-j, j)}; degree l on C^{2n}
      for (int tot = 0; tot <= D; ++tot)
        for (const auto& rsl : monomials(3, tot)) {
          int r = rsl[0], s = rsl[1], l = rsl[2];
          if (n == 0 && l > 0) continue;
          for (int j = 0; j <= std::min(r, s); ++j) {
            long long d = torus::dim_gl(spec.k, {r + s - j, j}) * sym_dim(2 * n, l);
            if (d == 0) continue;
            out.push_back({spec.label() + "[" + join({r, s, j, l}) + "]", {r, s, j, l}, d, {}});
          }
        }
      break;
    case Case::X: {
      const int m = spec.m;
      for (int tot = 0; tot <= D; ++tot)
        for (const auto& deg : monomials(m + 3, tot)) {
          int r = deg[m], s = deg[m + 1], l = deg[m + 2];
          if (n == 0 && l > 0) continue;
          for (int i = 0; i <= std::min(r, s); ++i) {
            long long d = torus::dim_gl(spec.k, {r + s - i, i}) * sym_dim(2 * n, l);
            if (d == 0) continue;
            std::vector<int> idx(deg.begin(), deg.begin() + m);
            idx.insert(idx.end(), {r, s, i, l});
            out.push_back({spec.label() + "[" + join(idx) + "]", idx, d, {}});
          }
        }
      break;
    }
    case Case::II:
      throw std::invalid_argument("metaplectic_components: case II is degenerate");
  }
  return out;
}

cplx psi_numeric(const std::vector<int>& layout, double lam, const std::vector<int>& degrees,
                 double t, const VectorXcd& v, int D) {
  require_lambda(lam);
  if (degrees.size() != layout.size())
    throw std::invalid_argument("psi_numeric: one degree per block required");
  int total = std::accumulate(layout.begin(), layout.end(), 0);
  if (v.size() != total) throw std::invalid_argument("psi_numeric: v has wrong dimension");
  int deg = 0;
  for (int d : degrees) {
    if (d < 0) throw std::invalid_argument("psi_numeric: negative degree");
    deg += d;
  }
  if (deg > D) throw std::invalid_argument("psi_numeric: component lies beyond the truncation");
  VectorXcd a = alphas(lam, v);
  // the trace over a product of blocks factorizes
  cplx tr = std::polar(1.0, lam * t);
  int off = 0;
  for (std::size_t b = 0; b < layout.size(); ++b) {
    cplx s = 0.0;
    for (const auto& m : monomials(layout[b], degrees[b])) {
      cplx p = 1.0;
      for (int i = 0; i < layout[b]; ++i) p *= displacement_entry(m[i], m[i], a(off + i));
      s += lam < 0 ? std::conj(p) : p;
    }
    tr *= s;
    off += layout[b];
  }
  return tr;
}

cplx psi_numeric(const algebra::CaseSpec& spec, double lam, const std::vector<int>& degrees,
                 double t, const VectorXcd& v, int D) {
  return psi_numeric(heisenberg_layout(spec), lam, degrees, t, v, D);
}

double symplectic_form(const VectorXcd& w, const VectorXcd& v) {
  return -(w.array() * v.array().conjugate()).sum().imag();
}

std::vector<cplx> twisted_convolution(const CFunction& f, const CFunction& g, double lam,
                                      const numerics::QuadratureSpec& quad,
                                      const std::vector<VectorXcd>& points) {
  if (quad.dim() % 2) throw std::invalid_argument("twisted_convolution: box must be 2n-dimensional");
  const int n = quad.dim() / 2;
  numerics::check_budget(quad.total_nodes() * static_cast<double>(points.size()),
                         "twisted_convolution");
  std::vector<cplx> out;
  out.reserve(points.size());
  for (const auto& v : points) {
    if (v.size() != n) throw std::invalid_argument("twisted_convolution: point dimension");
    numerics::Integrand integrand = [&](std::span<const double> x) {
      VectorXcd w(n);
      for (int i = 0; i < n; ++i) w(i) = cplx(x[2 * i], x[2 * i + 1]);
      return f(w) * g(v - w) * std::polar(1.0, 0.5 * lam * symplectic_form(w, v));
    };
    out.push_back(numerics::grid_quadrature(integrand, quad));
  }
  return out;
}

double laguerre_function(int j, int n, double lam, const VectorXcd& v) {
  double x = std::abs(lam) * v.squaredNorm();
  return numerics::laguerre(j, n - 1, 0.5 * x) * std::exp(-0.25 * x);
}

}  // namespace nilharm::fock
