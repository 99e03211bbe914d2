#include "nilharm/algebra.hpp"

#include <cmath>
#include <stdexcept>

#include "nilharm/quaternion.hpp"

namespace nilharm::algebra {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using cd = std::complex<double>;

std::string case_name(Case c) {
  static const char* names[] = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X"};
  return names[static_cast<int>(c)];
}

Case parse_case(const std::string& s) {
  static const char* names[] = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X"};
  for (int i = 0; i < 10; ++i)
    if (s == names[i]) return static_cast<Case>(i);
  if (s == "X-instance") return Case::X;
  throw std::invalid_argument("unknown case: " + s);
}

void CaseSpec::validate() const {
  auto need = [this](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument("case " + case_name(kind) + ": " + what);
  };
  switch (kind) {
    case Case::I: need(n >= 1, "requires n >= 1"); break;
    case Case::II: need(n >= 0, "requires n >= 0"); break;
    case Case::III:
      need(k1 >= 0 && k2 >= 0 && k1 + k2 >= 1, "requires k1, k2 >= 0 and k1 + k2 >= 1");
      break;
    case Case::IV: need(n >= 1, "requires n >= 1"); break;
    case Case::V: need(n >= 3, "requires n >= 3"); break;
    case Case::VI: need(n >= 2, "requires n >= 2"); break;
    case Case::VII: need(n >= 1, "requires n >= 1"); break;
    case Case::VIII: need(k >= 1 && n >= 0, "requires k >= 1, n >= 0"); break;
    case Case::IX: need(n >= 3, "requires n >= 3"); break;
    case Case::X:
      need(alpha >= 1 && beta >= 1, "requires alpha, beta >= 1");
      need(m >= 3 && k >= 1 && n >= 0, "requires m >= 3, k >= 1, n >= 0");
      break;
  }
}

std::string CaseSpec::label() const {
  std::string s = case_name(kind) + "(";
  switch (kind) {
    case Case::III: s += "k1=" + std::to_string(k1) + ",k2=" + std::to_string(k2); break;
    case Case::VIII: s += "k=" + std::to_string(k) + ",n=" + std::to_string(n); break;
    case Case::X:
      s += "m=" + std::to_string(m) + ",k=" + std::to_string(k) + ",n=" + std::to_string(n);
      break;
    default: s += "n=" + std::to_string(n);
  }
  return s + ")";
}

double WeightBlock::mu(const VectorXd& h, const VectorXd& z) const {
  double s = 0.0;
  if (torus_coeff.size()) s += torus_coeff.dot(h);
  if (center_coeff.size()) s += center_coeff.dot(z);
  return s;
}

Eigen::VectorXcd WeightBlock::complex_coords(const VectorXd& v) const {
  Eigen::VectorXcd c(complex_dim);
  for (int i = 0; i < complex_dim; ++i) c(i) = cd(v(coords[2 * i]), v(coords[2 * i + 1]));
  return c;
}

double WeightBlock::norm2(const VectorXd& v) const {
  double s = 0.0;
  for (int c : coords) s += v(c) * v(c);
  return s;
}

MatrixXd realify(const MatrixXcd& m) {
  MatrixXd r(2 * m.rows(), 2 * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      r(2 * i, 2 * j) = m(i, j).real();
      r(2 * i, 2 * j + 1) = -m(i, j).imag();
      r(2 * i + 1, 2 * j) = m(i, j).imag();
      r(2 * i + 1, 2 * j + 1) = m(i, j).real();
    }
  return r;
}

MatrixXd quaternionic(const MatrixXcd& m) {
  if (m.rows() % 2 || m.cols() % 2) throw std::invalid_argument("quaternionic: odd size");
  MatrixXd r = realify(m);
  for (int i = 3; i < r.rows(); i += 4) r.row(i) *= -1.0;
  for (int j = 3; j < r.cols(); j += 4) r.col(j) *= -1.0;
  return r;
}

namespace {

MatrixXcd kron_id(int n, const MatrixXcd& a) {
  MatrixXcd r = MatrixXcd::Zero(n * a.rows(), n * a.cols());
  for (int i = 0; i < n; ++i) r.block(i * a.rows(), i * a.cols(), a.rows(), a.cols()) = a;
  return r;
}

// A (x) I_2 for a k x k matrix.
MatrixXcd kron_right2(const MatrixXcd& a) {
  MatrixXcd r = MatrixXcd::Zero(2 * a.rows(), 2 * a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      r(2 * i, 2 * j) = a(i, j);
      r(2 * i + 1, 2 * j + 1) = a(i, j);
    }
  return r;
}

MatrixXd blockdiag(const std::vector<MatrixXd>& parts) {
  int d = 0;
  for (const auto& p : parts) d += static_cast<int>(p.rows());
  MatrixXd r = MatrixXd::Zero(d, d);
  int o = 0;
  for (const auto& p : parts) {
    r.block(o, o, p.rows(), p.cols()) = p;
    o += static_cast<int>(p.rows());
  }
  return r;
}

// v -> v Q^* on H^n rows, Q in chi form (2n x 2n); each quaternion slot of
// width `stride` quaternions is multiplied on the right.
MatrixXd right_sp(const MatrixXcd& q, int stride = 1) {
  const int n = static_cast<int>(q.rows()) / 2;
  MatrixXd r = MatrixXd::Zero(4 * n * stride, 4 * n * stride);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      quat::Quat c = quat::conj(quat::from_chi(q.block<2, 2>(2 * i, 2 * l)));
      Eigen::Matrix4d rc = quat::right(c);
      for (int s = 0; s < stride; ++s) r.block<4, 4>(4 * (i * stride + s), 4 * (l * stride + s)) = rc;
    }
  return r;
}

MatrixXd std_J(int pairs) {
  MatrixXd j = MatrixXd::Zero(2 * pairs, 2 * pairs);
  for (int i = 0; i < pairs; ++i) {
    j(2 * i + 1, 2 * i) = 1.0;
    j(2 * i, 2 * i + 1) = -1.0;
  }
  return j;
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> r;
  for (int i = lo; i < hi; ++i) r.push_back(i);
  return r;
}

WeightBlock block(std::string name, std::vector<int> coords, VectorXd torus, VectorXd center) {
  WeightBlock b;
  b.name = std::move(name);
  b.complex_dim = static_cast<int>(coords.size()) / 2;
  b.coords = std::move(coords);
  b.torus_coeff = std::move(torus);
  b.center_coeff = std::move(center);
  return b;
}

VectorXd vec(std::initializer_list<double> x) {
  VectorXd v(x.size());
  int i = 0;
  for (double t : x) v(i++) = t;
  return v;
}

// Imaginary parts of the diagonal of the torus generators, restricted to
// rows [off, off + n).
std::vector<VectorXd> diagonal_weights(const torus::RootSystem& rs, int off, int n) {
  std::vector<VectorXd> w(n, VectorXd::Zero(rs.rank()));
  for (int k = 0; k < rs.rank(); ++k)
    for (int j = 0; j < n; ++j) w[j](k) = rs.torus_basis()[k](off + j, off + j).imag();
  return w;
}

// Adjoint representation of su(2) on its own orthonormal basis.
MatrixXd adjoint3(const torus::RootSystem& rs, const MatrixXcd& g, bool lie) {
  return lie ? rs.ad(g) : rs.Ad(g);
}

}  // namespace

LauretAlgebra build_case(const CaseSpec& spec) {
  spec.validate();
  if (spec.kind == Case::X && (spec.alpha != 1 || spec.beta != 1))
    throw std::invalid_argument(
        "case X: only the su(m) + su(2) + c instance (alpha = beta = 1) can be built");

  LauretAlgebra a;
  a.spec_ = spec;
  const int n = spec.n;
  std::vector<MatrixXd> center;
  // pi on the defining realization: lie = true for algebra elements
  std::function<MatrixXd(const MatrixXcd&, bool)> rep;

  switch (spec.kind) {
    case Case::I: {
      a.derived_ = torus::root_system("su(2)");
      rep = [n](const MatrixXcd& x, bool) { return quaternionic(kron_id(n, x)); };
      a.u_group_ = numerics::GroupSpec::sp(n);
      a.u_rep_ = [](const MatrixXcd& q) { return right_sp(q); };
      a.blocks_.push_back(block("H^n", range(0, 4 * n), vec({1.0}), VectorXd()));
      break;
    }
    case Case::II: {
      a.derived_ = torus::root_system("su(2)");
      const torus::RootSystem rs = *a.derived_;
      rep = [n, rs](const MatrixXcd& x, bool lie) {
        std::vector<MatrixXd> parts{adjoint3(rs, x, lie)};
        if (n > 0) parts.push_back(quaternionic(kron_id(n, x)));
        return blockdiag(parts);
      };
      if (n > 0) {
        a.u_group_ = numerics::GroupSpec::sp(n);
        a.u_rep_ = [](const MatrixXcd& q) {
          return blockdiag({MatrixXd::Identity(3, 3), right_sp(q)});
        };
      }
      break;
    }
    case Case::III: {
      const int k1 = spec.k1, k2 = spec.k2;
      a.derived_ = torus::root_system("su(2)+su(2)");
      rep = [k1, k2](const MatrixXcd& x, bool lie) {
        MatrixXcd x1 = x.topLeftCorner(2, 2), x2 = x.bottomRightCorner(2, 2);
        quat::Quat p1 = quat::from_chi(x1), p2 = quat::from_chi(x2);
        MatrixXd mid = lie ? MatrixXd(quat::left(p1) - quat::right(p2))
                           : MatrixXd(quat::left(p1) * quat::right(quat::conj(p2)));
        std::vector<MatrixXd> parts;
        if (k1 > 0) parts.push_back(quaternionic(kron_id(k1, x1)));
        parts.push_back(mid);
        if (k2 > 0) parts.push_back(quaternionic(kron_id(k2, x2)));
        return blockdiag(parts);
      };
      std::vector<numerics::GroupSpec> ug;
      if (k1 > 0) ug.push_back(numerics::GroupSpec::sp(k1));
      if (k2 > 0) ug.push_back(numerics::GroupSpec::sp(k2));
      a.u_group_ = ug.size() == 1 ? ug[0] : numerics::GroupSpec::product(ug);
      a.u_rep_ = [k1, k2](const MatrixXcd& q) {
        std::vector<MatrixXd> parts;
        int o = 0;
        if (k1 > 0) {
          parts.push_back(right_sp(q.block(0, 0, 2 * k1, 2 * k1)));
          o = 2 * k1;
        }
        parts.push_back(MatrixXd::Identity(4, 4));
        if (k2 > 0) parts.push_back(right_sp(q.block(o, o, 2 * k2, 2 * k2)));
        return blockdiag(parts);
      };
      int o = 4 * k1;
      if (k1 > 0) a.blocks_.push_back(block("H^k1", range(0, o), vec({1, 0}), VectorXd()));
      a.blocks_.push_back(block("R4+", {o, o + 1}, vec({1, -1}), VectorXd()));
      a.blocks_.push_back(block("R4-", {o + 2, o + 3}, vec({1, 1}), VectorXd()));
      if (k2 > 0)
        a.blocks_.push_back(block("H^k2", range(o + 4, o + 4 + 4 * k2), vec({0, 1}), VectorXd()));
      break;
    }
    case Case::IV: {
      a.derived_ = torus::root_system("sp(2)");
      rep = [n](const MatrixXcd& x, bool) { return quaternionic(kron_id(n, x)); };
      a.u_group_ = numerics::GroupSpec::sp(n);
      a.u_rep_ = [](const MatrixXcd& q) { return right_sp(q, 2); };
      std::vector<int> u, w;
      for (int l = 0; l < n; ++l)
        for (int c = 0; c < 4; ++c) {
          u.push_back(8 * l + c);
          w.push_back(8 * l + 4 + c);
        }
      a.blocks_.push_back(block("U", u, vec({1, 0}), VectorXd()));
      a.blocks_.push_back(block("W", w, vec({0, 1}), VectorXd()));
      break;
    }
    case Case::V:
    case Case::IX: {
      a.derived_ = torus::root_system("su(" + std::to_string(n) + ")");
      rep = [](const MatrixXcd& x, bool) { return realify(x); };
      if (spec.kind == Case::IX) center.push_back(realify(cd(0, 1) * MatrixXcd::Identity(n, n)));
      a.u_group_ = numerics::GroupSpec::torus(1);
      a.u_rep_ = [n](const MatrixXcd& u) { return realify(u(0, 0) * MatrixXcd::Identity(n, n)); };
      auto w = diagonal_weights(*a.derived_, 0, n);
      VectorXd c = spec.kind == Case::IX ? vec({1.0}) : VectorXd();
      for (int j = 0; j < n; ++j)
        a.blocks_.push_back(block("e" + std::to_string(j), {2 * j, 2 * j + 1}, w[j], c));
      break;
    }
    case Case::VI: {
      if (n == 2) {
        center.push_back(std_J(1));
        a.blocks_.push_back(block("R2", {0, 1}, VectorXd(), vec({1.0})));
        a.dim_V_ = 2;
        break;
      }
      a.derived_ = torus::root_system("so(" + std::to_string(n) + ")");
      rep = [](const MatrixXcd& x, bool) { return MatrixXd(x.real()); };
      for (int k = 0; k < n / 2; ++k) {
        VectorXd t = VectorXd::Zero(n / 2);
        t(k) = 1.0;
        a.blocks_.push_back(block("P" + std::to_string(k), {2 * k, 2 * k + 1}, t, VectorXd()));
      }
      break;
    }
    case Case::VII: {
      center.push_back(std_J(n));
      a.dim_V_ = 2 * n;
      a.u_group_ = numerics::GroupSpec::u(n);
      a.u_rep_ = [](const MatrixXcd& u) { return realify(u); };
      a.blocks_.push_back(block("C^n", range(0, 2 * n), VectorXd(), vec({1.0})));
      break;
    }
    case Case::VIII: {
      const int k = spec.k;
      a.derived_ = torus::root_system("su(2)");
      rep = [k, n](const MatrixXcd& x, bool) {
        std::vector<MatrixXd> parts{realify(kron_id(k, x))};
        if (n > 0) parts.push_back(quaternionic(kron_id(n, x)));
        return blockdiag(parts);
      };
      MatrixXd c = MatrixXd::Zero(4 * k + 4 * n, 4 * k + 4 * n);
      c.topLeftCorner(4 * k, 4 * k) = std_J(2 * k);
      center.push_back(c);
      std::vector<numerics::GroupSpec> ug{numerics::GroupSpec::u(k)};
      if (n > 0) ug.push_back(numerics::GroupSpec::sp(n));
      a.u_group_ = ug.size() == 1 ? ug[0] : numerics::GroupSpec::product(ug);
      a.u_rep_ = [k, n](const MatrixXcd& u) {
        std::vector<MatrixXd> parts{realify(kron_right2(u.topLeftCorner(k, k)))};
        if (n > 0) parts.push_back(right_sp(u.block(k, k, 2 * n, 2 * n)));
        return blockdiag(parts);
      };
      std::vector<int> uc, wc;
      for (int l = 0; l < k; ++l) {
        uc.insert(uc.end(), {4 * l, 4 * l + 1});
        wc.insert(wc.end(), {4 * l + 2, 4 * l + 3});
      }
      a.blocks_.push_back(block("U", uc, vec({1.0}), vec({1.0})));
      a.blocks_.push_back(block("W", wc, vec({-1.0}), vec({1.0})));
      if (n > 0) a.blocks_.push_back(block("H^n", range(4 * k, 4 * k + 4 * n), vec({1.0}), vec({0.0})));
      break;
    }
    case Case::X: {
      const int m = spec.m, k = spec.k;
      a.derived_ = torus::root_system("su(" + std::to_string(m) + ")+su(2)");
      rep = [m, k, n](const MatrixXcd& x, bool) {
        MatrixXcd xm = x.topLeftCorner(m, m), x2 = x.bottomRightCorner(2, 2);
        std::vector<MatrixXd> parts{realify(xm), realify(kron_id(k, x2))};
        if (n > 0) parts.push_back(quaternionic(kron_id(n, x2)));
        return blockdiag(parts);
      };
      const int dv = 2 * m + 4 * k + 4 * n;
      MatrixXd c = MatrixXd::Zero(dv, dv);
      c.topLeftCorner(2 * m + 4 * k, 2 * m + 4 * k) = std_J(m + 2 * k);
      center.push_back(c);
      std::vector<numerics::GroupSpec> ug{numerics::GroupSpec::torus(1), numerics::GroupSpec::u(k)};
      if (n > 0) ug.push_back(numerics::GroupSpec::sp(n));
      a.u_group_ = numerics::GroupSpec::product(ug);
      a.u_rep_ = [m, k, n](const MatrixXcd& u) {
        std::vector<MatrixXd> parts{realify(u(0, 0) * MatrixXcd::Identity(m, m)),
                                    realify(kron_right2(u.block(1, 1, k, k)))};
        if (n > 0) parts.push_back(right_sp(u.block(1 + k, 1 + k, 2 * n, 2 * n)));
        return blockdiag(parts);
      };
      const int r = a.derived_->rank();  // m - 1 + 1
      auto w = diagonal_weights(*a.derived_, 0, m);
      for (int j = 0; j < m; ++j)
        a.blocks_.push_back(block("e" + std::to_string(j), {2 * j, 2 * j + 1}, w[j], vec({1.0})));
      VectorXd tu = VectorXd::Zero(r), tw = VectorXd::Zero(r);
      tu(r - 1) = 1.0;
      tw(r - 1) = -1.0;
      std::vector<int> uc, wc;
      for (int l = 0; l < k; ++l) {
        int o = 2 * m + 4 * l;
        uc.insert(uc.end(), {o, o + 1});
        wc.insert(wc.end(), {o + 2, o + 3});
      }
      a.blocks_.push_back(block("U", uc, tu, vec({1.0})));
      a.blocks_.push_back(block("W", wc, tw, vec({1.0})));
      if (n > 0)
        a.blocks_.push_back(block("H^n", range(2 * m + 4 * k, dv), tu, vec({0.0})));
      break;
    }
  }

  if (a.derived_) {
    for (const auto& b : a.derived_->basis()) a.pi_.push_back(rep(b, true));
    a.gprime_rep_ = [rep](const MatrixXcd& g) { return rep(g, false); };
    a.dim_V_ = static_cast<int>(a.pi_.front().rows());
  }
  for (auto& c : center) a.pi_.push_back(c);
  a.dim_c_ = static_cast<int>(center.size());
  return a;
}

MatrixXd LauretAlgebra::pi_of(const VectorXd& x) const {
  if (x.size() != dim_g()) throw std::invalid_argument("pi_of: wrong dimension");
  MatrixXd m = MatrixXd::Zero(dim_V_, dim_V_);
  for (int i = 0; i < dim_g(); ++i) m += x(i) * pi_[i];
  return m;
}

VectorXd LauretAlgebra::element(const VectorXd& h, const VectorXd& z) const {
  if (h.size() != rank() || z.size() != dim_c_)
    throw std::invalid_argument("element: expected " + std::to_string(rank()) +
                                " torus and " + std::to_string(dim_c_) + " center coordinates");
  VectorXd x = VectorXd::Zero(dim_g());
  if (derived_) x.head(dim_gprime()) = derived_->coords(derived_->torus_matrix(h));
  x.tail(dim_c_) = z;
  return x;
}

std::vector<int> LauretAlgebra::layout() const {
  std::vector<int> l;
  for (const auto& b : blocks_) l.push_back(b.complex_dim);
  return l;
}

std::optional<numerics::GroupSpec> LauretAlgebra::gprime_group() const {
  if (!derived_) return std::nullopt;
  return derived_->group();
}

OrthAutomorphism LauretAlgebra::gprime_automorphism(const MatrixXcd& g) const {
  if (!derived_) throw std::logic_error("gprime_automorphism: g' is trivial");
  OrthAutomorphism a;
  a.g_part = MatrixXd::Identity(dim_g(), dim_g());
  a.g_part.topLeftCorner(dim_gprime(), dim_gprime()) = derived_->Ad(g);
  a.V_part = gprime_rep_(g);
  return a;
}

OrthAutomorphism LauretAlgebra::u_automorphism(const MatrixXcd& u) const {
  if (!u_group_) throw std::logic_error("u_automorphism: U is trivial");
  return {MatrixXd::Identity(dim_g(), dim_g()), u_rep_(u)};
}

OrthAutomorphism LauretAlgebra::sample_k(std::mt19937_64& rng) const {
  OrthAutomorphism a{MatrixXd::Identity(dim_g(), dim_g()), MatrixXd::Identity(dim_V_, dim_V_)};
  if (derived_) a = gprime_automorphism(numerics::haar_sample(derived_->group(), rng));
  if (u_group_) a.V_part = u_rep_(numerics::haar_sample(*u_group_, rng)) * a.V_part;
  return a;
}

LauretAlgebra LauretAlgebra::with_pi(std::vector<MatrixXd> pi) const {
  if (pi.size() != pi_.size()) throw std::invalid_argument("with_pi: wrong count");
  LauretAlgebra c = *this;
  c.pi_ = std::move(pi);
  return c;
}

VectorXd bracket_of(const LauretAlgebra& alg, const VectorXd& u, const VectorXd& v) {
  if (u.size() != alg.dim_V() || v.size() != alg.dim_V())
    throw std::invalid_argument("bracket_of: expected V-vectors of dimension " +
                                std::to_string(alg.dim_V()));
  VectorXd w(alg.dim_g());
  for (int i = 0; i < alg.dim_g(); ++i) w(i) = v.dot(alg.pi()[i] * u);
  return w;
}

std::vector<Check> check_structure(const LauretAlgebra& alg, double tol) {
  std::vector<Check> out;
  auto add = [&](const std::string& name, double d) { out.push_back({name, d, d < tol}); };
  const int dv = alg.dim_V(), dg = alg.dim_g();

  double skew = 0.0;
  for (const auto& p : alg.pi()) skew = std::max(skew, (p + p.transpose()).cwiseAbs().maxCoeff());
  add("pi_skew", skew);

  // bracket on basis pairs: antisymmetry and vanishing diagonal
  double anti = 0.0, diag = 0.0;
  for (int i = 0; i < dv; ++i) {
    VectorXd ei = VectorXd::Unit(dv, i);
    diag = std::max(diag, bracket_of(alg, ei, ei).cwiseAbs().maxCoeff());
    for (int j = i + 1; j < dv; ++j) {
      VectorXd ej = VectorXd::Unit(dv, j);
      anti = std::max(anti, (bracket_of(alg, ei, ej) + bracket_of(alg, ej, ei)).cwiseAbs().maxCoeff());
    }
  }
  add("bracket_antisymmetric", anti);
  add("bracket_alternating", diag);

  // defining identity on basis triples
  double ident = 0.0;
  for (int a = 0; a < dg; ++a)
    for (int i = 0; i < dv; ++i)
      for (int j = 0; j < dv; ++j) {
        VectorXd ei = VectorXd::Unit(dv, i), ej = VectorXd::Unit(dv, j);
        double lhs = bracket_of(alg, ei, ej)(a);
        double rhs = ej.dot(alg.pi()[a] * ei);
        ident = std::max(ident, std::abs(lhs - rhs));
      }
  add("defining_identity", ident);

  // pi is a representation: [pi(X), pi(Y)] = pi([X, Y]) on g'
  double homo = 0.0;
  if (const auto& rs = alg.derived()) {
    for (int a = 0; a < rs->dim(); ++a)
      for (int b = 0; b < rs->dim(); ++b) {
        const auto& A = rs->basis()[a];
        const auto& B = rs->basis()[b];
        VectorXd c = VectorXd::Zero(dg);
        c.head(rs->dim()) = rs->coords(A * B - B * A);
        MatrixXd lhs = alg.pi()[a] * alg.pi()[b] - alg.pi()[b] * alg.pi()[a];
        homo = std::max(homo, (lhs - alg.pi_of(c)).cwiseAbs().maxCoeff());
      }
  }
  for (int c = alg.dim_gprime(); c < dg; ++c)
    for (int a = 0; a < dg; ++a)
      homo = std::max(homo, (alg.pi()[c] * alg.pi()[a] - alg.pi()[a] * alg.pi()[c]).cwiseAbs().maxCoeff());
  add("pi_representation", homo);

  // two-step: the bracket takes values in g, which is central by construction
  add("two_step", 0.0);
  return out;
}

std::pair<VectorXd, VectorXd> apply_automorphism(const LauretAlgebra& alg, const OrthAutomorphism& a,
                                                 const VectorXd& z, const VectorXd& v) {
  const int dg = alg.dim_g(), dv = alg.dim_V();
  if (a.g_part.rows() != dg || a.V_part.rows() != dv || z.size() != dg || v.size() != dv)
    throw std::invalid_argument("apply_automorphism: dimension mismatch");
  auto orth = [](const MatrixXd& m) {
    return (m.transpose() * m - MatrixXd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
  };
  if (orth(a.g_part) > 1e-9 || orth(a.V_part) > 1e-9)
    throw std::invalid_argument("apply_automorphism: automorphism is not orthogonal");
  return {a.g_part * z, a.V_part * v};
}

NPoint multiply(const LauretAlgebra& alg, const NPoint& a, const NPoint& b) {
  return {a.z + b.z + 0.5 * bracket_of(alg, a.v, b.v), a.v + b.v};
}

NPoint inverse(const NPoint& a) { return {-a.z, -a.v}; }

}  // namespace nilharm::algebra
