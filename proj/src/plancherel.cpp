#include "nilharm/plancherel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nilharm/fock.hpp"
#include "nilharm/torus.hpp"

namespace nilharm::plancherel {

using algebra::NPoint;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

PlancherelDensity density(const algebra::LauretAlgebra& alg, const VectorXd& h, const VectorXd& z) {
  PlancherelDensity d;
  auto lam = forms::functional(alg, h, z);
  d.verdict = forms::classify(alg, lam).verdict;
  d.pfaffian = forms::pfaffian_abs(forms::skew_form(alg, lam));
  d.theta = alg.derived() ? torus::theta(*alg.derived(), h) : 1.0;
  d.value = d.verdict == forms::Verdict::SquareIntegrable ? d.pfaffian * d.theta : 0.0;
  return d;
}

std::vector<cplx> group_convolution(const algebra::LauretAlgebra& alg, const PointFunction& f,
                                    const PointFunction& g, const numerics::QuadratureSpec& quad,
                                    const std::vector<NPoint>& points) {
  const int dg = alg.dim_g(), dv = alg.dim_V();
  if (quad.dim() != dg + dv) throw std::invalid_argument("group_convolution: box must cover g + V");
  numerics::check_budget(quad.total_nodes() * static_cast<double>(points.size()), "group_convolution");
  std::vector<cplx> out;
  for (const auto& x : points) {
    numerics::Integrand integrand = [&](std::span<const double> c) {
      NPoint y{Eigen::Map<const VectorXd>(c.data(), dg), Eigen::Map<const VectorXd>(c.data() + dg, dv)};
      return f(y) * g(algebra::multiply(alg, algebra::inverse(y), x));
    };
    out.push_back(numerics::grid_quadrature(integrand, quad));
  }
  return out;
}

// ------------------------------------------------------------------ inversion

double InversionReport::max_rel_error() const {
  double m = 0.0;
  for (double e : rel_error) m = std::max(m, e);
  return m;
}

namespace {

InversionReport inversion(const HeisenbergFunction& f, const std::vector<NPoint>& probes,
                          const InversionTruncation& tr, bool parallel) {
  if (tr.J < 0 || tr.lambda_nodes < 2 || tr.lambda_nodes % 2 || tr.w_nodes < 1 || tr.s_nodes < 1)
    throw std::invalid_argument("heisenberg_inversion_check: bad truncation");
  for (const auto& p : probes)
    if (p.z.size() != 1 || p.v.size() != 2)
      throw std::invalid_argument("heisenberg_inversion_check: probes live on H_1");
  const int W = tr.w_nodes * tr.w_nodes, S = tr.s_nodes, L = tr.lambda_nodes, P = static_cast<int>(probes.size());
  numerics::check_budget(static_cast<double>(L) * W * (S + P), "heisenberg_inversion_check");

  auto rw = numerics::rule_on(numerics::Rule::GaussLegendre, tr.w_nodes, -tr.box, tr.box);
  auto rs = numerics::rule_on(numerics::Rule::GaussLegendre, S, -tr.box, tr.box);
  auto lneg = numerics::rule_on(numerics::Rule::GaussLegendre, L / 2, -tr.lambda_max, 0.0);
  auto lpos = numerics::rule_on(numerics::Rule::GaussLegendre, L / 2, 0.0, tr.lambda_max);
  std::vector<double> lam(lneg.x), lw(lneg.w);
  lam.insert(lam.end(), lpos.x.begin(), lpos.x.end());
  lw.insert(lw.end(), lpos.w.begin(), lpos.w.end());

  std::vector<cplx> w(W);
  std::vector<double> ww(W);
  for (int a = 0; a < tr.w_nodes; ++a)
    for (int b = 0; b < tr.w_nodes; ++b) {
      w[a * tr.w_nodes + b] = cplx(rw.x[a], rw.x[b]);
      ww[a * tr.w_nodes + b] = rw.w[a] * rw.w[b];
    }
  std::vector<cplx> ftab(static_cast<std::size_t>(W) * S);
  for (int i = 0; i < W; ++i)
    for (int s = 0; s < S; ++s) ftab[static_cast<std::size_t>(i) * S + s] = f(rs.x[s], w[i]);

  std::vector<std::vector<cplx>> per_lambda(L, std::vector<cplx>(P));
  auto work = [&](int l) {
    const double la = lam[l], al = std::abs(la);
    std::vector<cplx> F(W);
    for (int i = 0; i < W; ++i) {
      cplx acc = 0.0;
      for (int s = 0; s < S; ++s) acc += rs.w[s] * ftab[static_cast<std::size_t>(i) * S + s] * std::polar(1.0, -la * rs.x[s]);
      F[i] = acc;
    }
    std::vector<double> lag(tr.J + 1);
    for (int p = 0; p < P; ++p) {
      const double t = probes[p].z(0);
      const cplx v(probes[p].v(0), probes[p].v(1));
      cplx acc = 0.0;
      for (int i = 0; i < W; ++i) {
        const double B = -std::imag(w[i] * std::conj(v));
        const double x = al * std::norm(v - w[i]);
        numerics::laguerre_all(tr.J, 0.0, 0.5 * x, lag);
        double sj = 0.0;
        for (int j = 0; j <= tr.J; ++j) sj += lag[j];
        acc += ww[i] * F[i] * std::polar(sj * std::exp(-0.25 * x), la * (t - 0.5 * B));
      }
      per_lambda[l][p] = lw[l] * al * acc;
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int l = 0; l < L; ++l) work(l);
  } else {
    for (int l = 0; l < L; ++l) work(l);
  }

  InversionReport rep;
  rep.probes = probes;
  rep.trunc = tr;
  rep.sums.assign(P, 0.0);
  for (int l = 0; l < L; ++l)
    for (int p = 0; p < P; ++p) rep.sums[p] += per_lambda[l][p];
  for (const auto& p : probes) rep.exact.push_back(f(p.z(0), cplx(p.v(0), p.v(1))));
  if (P == 0) return rep;
  if (std::abs(rep.sums[0]) > 0.0) rep.fitted_c = (rep.exact[0] / rep.sums[0]).real();
  for (int p = 0; p < P; ++p) {
    double e = std::abs(rep.fitted_c * rep.sums[p] - rep.exact[p]);
    rep.rel_error.push_back(std::abs(rep.exact[p]) > 0.0 ? e / std::abs(rep.exact[p]) : e);
  }
  return rep;
}

}  // namespace

InversionReport heisenberg_inversion_check(const HeisenbergFunction& f, const std::vector<NPoint>& probes,
                                           const InversionTruncation& trunc) {
  return inversion(f, probes, trunc, true);
}

InversionReport heisenberg_inversion_check_serial(const HeisenbergFunction& f,
                                                  const std::vector<NPoint>& probes,
                                                  const InversionTruncation& trunc) {
  return inversion(f, probes, trunc, false);
}

ProjectionReport projection_check(double lam, int i, int j, const numerics::QuadratureSpec& quad,
                                  const std::vector<VectorXcd>& points) {
  if (points.empty()) throw std::invalid_argument("projection_check: no points");
  fock::CFunction fi = [&](const VectorXcd& w) { return cplx(fock::laguerre_function(i, 1, lam, w)); };
  fock::CFunction fj = [&](const VectorXcd& w) { return cplx(fock::laguerre_function(j, 1, lam, w)); };
  ProjectionReport rep;
  rep.values = fock::twisted_convolution(fi, fj, lam, quad, points);
  if (i != j) {
    for (cplx c : rep.values) rep.max_abs = std::max(rep.max_abs, std::abs(c));
    return rep;
  }
  rep.c_prime = (rep.values[0] / fock::laguerre_function(j, 1, lam, points[0])).real();
  double scale = 0.0, err = 0.0;
  for (std::size_t p = 0; p < points.size(); ++p) {
    double want = rep.c_prime * fock::laguerre_function(j, 1, lam, points[p]);
    scale = std::max(scale, std::abs(want));
    err = std::max(err, std::abs(rep.values[p] - want));
  }
  rep.max_rel_residual = err / scale;
  return rep;
}

OrthogonalityReport coefficient_orthogonality(double lam, double lam1, int max_degree,
                                              const numerics::QuadratureSpec& quad) {
  if (quad.dim() != 2) throw std::invalid_argument("coefficient_orthogonality: n = 1 needs a 2-D box");
  if (lam == 0.0 || lam1 == 0.0) throw std::invalid_argument("coefficient_orthogonality: lambda = 0");
  const int D = max_degree + 1;
  numerics::check_budget(quad.total_nodes() * D * D * D * D, "coefficient_orthogonality");
  auto r0 = numerics::rule_on(quad.rule, quad.nodes, quad.lower[0], quad.upper[0]);
  auto r1 = numerics::rule_on(quad.rule, quad.nodes, quad.lower[1], quad.upper[1]);
  // G[same/cross][(h1,h2),(h3,h4)]
  MatrixXcd same = MatrixXcd::Zero(D * D, D * D), cross = same;
  for (int a = 0; a < quad.nodes; ++a)
    for (int b = 0; b < quad.nodes; ++b) {
      const double w = r0.w[a] * r1.w[b];
      VectorXcd v = VectorXcd::Constant(1, cplx(r0.x[a], r1.x[b]));
      VectorXcd e(D * D), e1(D * D);
      for (int h1 = 0; h1 < D; ++h1)
        for (int h2 = 0; h2 < D; ++h2) {
          e(h1 * D + h2) = fock::matrix_coefficient(lam, {h1}, {h2}, 0.0, v);
          e1(h1 * D + h2) = fock::matrix_coefficient(lam1, {h1}, {h2}, 0.0, v);
        }
      same += w * e * e.adjoint();
      cross += w * e * e1.adjoint();
    }
  OrthogonalityReport rep;
  rep.max_degree = max_degree;
  rep.fitted_c = same(0, 0).real();
  for (int p = 0; p < D * D; ++p)
    for (int q = 0; q < D * D; ++q) {
      double want = p == q ? rep.fitted_c : 0.0;
      rep.residual = std::max(rep.residual, std::abs(same(p, q) - want));
      rep.cross_max = std::max(rep.cross_max, std::abs(cross(p, q)));
    }
  return rep;
}

Formula1Report formula1_check(const HeisenbergFunction& f, double lam, int alpha, int beta_max,
                              const numerics::QuadratureSpec& quad, const std::vector<NPoint>& points) {
  if (quad.dim() != 3) throw std::invalid_argument("formula1_check: H_1 needs a 3-D box");
  auto alg = algebra::build_case([] {
    algebra::CaseSpec s;
    s.kind = algebra::Case::VII;
    s.n = 1;
    return s;
  }());
  auto e = [&](int a, int b, const NPoint& x) {
    return fock::matrix_coefficient(lam, {a}, {b}, x.z(0), VectorXcd::Constant(1, cplx(x.v(0), x.v(1))));
  };
  auto as_point = [](std::span<const double> c) {
    NPoint y{VectorXd::Constant(1, c[0]), VectorXd(2)};
    y.v << c[1], c[2];
    return y;
  };
  Formula1Report rep;
  std::vector<cplx> coef;
  for (int b = 0; b <= beta_max; ++b) {
    numerics::Integrand g = [&](std::span<const double> c) {
      NPoint y = as_point(c);
      return f(c[0], cplx(c[1], c[2])) * std::conj(e(alpha, b, y));
    };
    coef.push_back(numerics::grid_quadrature(g, quad));
  }
  for (const auto& x : points) {
    numerics::Integrand g = [&](std::span<const double> c) {
      NPoint y = as_point(c);
      return f(c[0], cplx(c[1], c[2])) * e(alpha, alpha, algebra::multiply(alg, algebra::inverse(y), x));
    };
    rep.lhs.push_back(numerics::grid_quadrature(g, quad));
    cplx r = 0.0;
    for (int b = 0; b <= beta_max; ++b) r += coef[b] * e(alpha, b, x);
    rep.rhs.push_back(r);
    rep.max_abs_error = std::max(rep.max_abs_error, std::abs(rep.lhs.back() - r));
  }
  return rep;
}

// ---------------------------------------------------------------- case I probe

CaseIProbeReport general_inversion_probe(const CaseIProbeSpec& sp) {
  if (sp.J < 0 || sp.theta_nodes < 1 || sp.r_nodes < 1 || sp.s_nodes < 1 || !(sp.a > 0) || !(sp.b > 0))
    throw std::invalid_argument("general_inversion_probe: bad parameters");
  algebra::CaseSpec cs;
  cs.kind = algebra::Case::I;
  cs.n = 1;
  auto alg = algebra::build_case(cs);
  const VectorXd hhat = alg.element(VectorXd::Constant(1, 1.0), VectorXd(0));
  const VectorXd zhat = VectorXd::Unit(3, 2);

  auto rt = numerics::rule_on(numerics::Rule::GaussLegendre, sp.theta_nodes, 0.0, sp.theta_max);
  auto rr = numerics::rule_on(numerics::Rule::GaussLegendre, sp.r_nodes, 0.0,
                              numerics::gaussian_half_width(sp.a, 1e-18));
  auto rs = numerics::rule_on(numerics::Rule::GaussLegendre, sp.s_nodes, 0.0,
                              numerics::gaussian_half_width(sp.b, 1e-18));

  // theta weight times the v-part: |P| theta(H) sum_j int 2 pi^2 s^3 e^{-b s^2} psi_j(s e_0) ds
  std::vector<double> tw(sp.theta_nodes);
  std::vector<double> lag(sp.J + 1);
  for (int t = 0; t < sp.theta_nodes; ++t) {
    const double th = rt.x[t];
    double vpart = 0.0;
    for (int s = 0; s < sp.s_nodes; ++s) {
      const double x = th * rs.x[s] * rs.x[s];
      numerics::laguerre_all(sp.J, 1.0, 0.5 * x, lag);
      double sj = 0.0;
      for (double l : lag) sj += l;
      vpart += rs.w[s] * 2 * M_PI * M_PI * std::pow(rs.x[s], 3) * std::exp(-sp.b * rs.x[s] * rs.x[s]) * sj *
               std::exp(-0.25 * x);
    }
    tw[t] = rt.w[t] * density(alg, VectorXd::Constant(1, th), VectorXd(0)).value * vpart;
  }
  std::vector<double> rw(sp.r_nodes);
  for (int r = 0; r < sp.r_nodes; ++r)
    rw[r] = rr.w[r] * 4 * M_PI * rr.x[r] * rr.x[r] * std::exp(-sp.a * rr.x[r] * rr.x[r]);

  // psi(g.(r zhat, s e_0)) has phase theta r <H^, Ad(g) zhat>; the v-part only
  // sees |v|.  The sine part is odd under the Weyl reflection and averages to 0.
  numerics::HaarIntegrand integrand = [&](const MatrixXcd& g) {
    const double c = hhat.dot(alg.gprime_automorphism(g).g_part * zhat);
    double acc = 0.0;
    for (int t = 0; t < sp.theta_nodes; ++t) {
      double rsum = 0.0;
      for (int r = 0; r < sp.r_nodes; ++r) rsum += rw[r] * std::cos(rt.x[t] * rr.x[r] * c);
      acc += tw[t] * rsum;
    }
    return cplx(acc, 0.0);
  };
  auto est = numerics::mc_integrate(integrand, *alg.gprime_group(), sp.samples, sp.seed);

  double det = 0.0;
  for (int t = 0; t < sp.theta_nodes; ++t) {
    double rsum = 0.0;
    for (int r = 0; r < sp.r_nodes; ++r) rsum += rw[r] * numerics::sphere_character(rt.x[t] * rr.x[r]);
    det += tw[t] * rsum;
  }

  CaseIProbeReport rep;
  rep.rhs = est.mean;
  rep.std_error = est.std_error;
  rep.samples = est.samples;
  rep.f_identity = 1.0;
  rep.ratio = est.mean.real() / rep.f_identity;
  rep.ratio_error = est.std_error / rep.f_identity;
  rep.deterministic_ratio = det / rep.f_identity;
  return rep;
}

}  // namespace nilharm::plancherel
