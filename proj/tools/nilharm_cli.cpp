// nilharm: command-line front end.
//
//   nilharm build     --case IV --n 1
//   nilharm classify  --case II --n 1 --lambda random
//   nilharm pfaffian  --case VII --n 3 --lambda 2
//   nilharm density   --case I --n 1 --points 9 --t-max 2
//   nilharm spherical --case I --n 1 --j 0 --lambda 1 --z-norm 3.14159
//   nilharm invert    --case VII --n 1 --index 20
//   nilharm selftest
//
// A numeric --lambda sets torus coordinate k to lambda*(k+1) and every center
// coordinate to lambda; --H and --Z override.  JSON outputs carry the full
// run configuration under "config"; CSV outputs start with "# config: {...}".

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nilharm/algebra.hpp"
#include "nilharm/fock.hpp"
#include "nilharm/forms.hpp"
#include "nilharm/plancherel.hpp"
#include "nilharm/spherical.hpp"
#include "nilharm/torus.hpp"

using namespace nilharm;
using Eigen::VectorXd;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  std::string verb;
  std::string case_name = "VII";
  int n = 1, k = 0, k1 = 0, k2 = 0, m = 0;
  std::string lambda = "1";
  std::vector<double> H, Z;
  std::vector<int> index;
  int points = 1;
  double t_max = 2.0;
  double z_norm = 0.0, v_norm = 0.0;
  int grid = 64;
  int lambda_nodes = 64;
  double width_a = 1.0, width_b = 1.0;
  std::size_t mc_samples = 100000;
  std::uint64_t seed = 20261016;
  std::string out;
  std::string format = "json";
  bool timing = false;
};

json config_json(const RunConfig& c) {
  json j;
  j["verb"] = c.verb;
  j["case"] = c.case_name;
  j["n"] = c.n;
  j["k"] = c.k;
  j["k1"] = c.k1;
  j["k2"] = c.k2;
  j["m"] = c.m;
  j["lambda"] = c.lambda;
  j["H"] = c.H;
  j["Z"] = c.Z;
  j["index"] = c.index;
  j["points"] = c.points;
  j["t_max"] = c.t_max;
  j["z_norm"] = c.z_norm;
  j["v_norm"] = c.v_norm;
  j["grid"] = c.grid;
  j["lambda_nodes"] = c.lambda_nodes;
  j["width_a"] = c.width_a;
  j["width_b"] = c.width_b;
  j["mc_samples"] = c.mc_samples;
  j["seed"] = c.seed;
  j["format"] = c.format;
  j["version"] = kVersion;
  j["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                       std::to_string(EIGEN_MINOR_VERSION);
  return j;
}

algebra::CaseSpec case_spec(const RunConfig& c) {
  algebra::CaseSpec s;
  s.kind = algebra::parse_case(c.case_name);
  s.n = c.n;
  s.k = c.k;
  s.k1 = c.k1;
  s.k2 = c.k2;
  s.m = c.m;
  s.validate();
  return s;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json vec(const VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

struct Lambda {
  VectorXd h, z;
  bool random = false;
  VectorXd full;  // used when random
};

Lambda parse_lambda(const RunConfig& c, const algebra::LauretAlgebra& alg) {
  Lambda l;
  if (c.lambda == "random") {
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> nd;
    l.random = true;
    l.full.resize(alg.dim_g());
    for (int i = 0; i < alg.dim_g(); ++i) l.full(i) = nd(rng);
    return l;
  }
  double x;
  try {
    std::size_t pos = 0;
    x = std::stod(c.lambda, &pos);
    if (pos != c.lambda.size()) throw std::invalid_argument("");
  } catch (...) {
    throw std::invalid_argument("--lambda must be a number or 'random'");
  }
  l.h.resize(alg.rank());
  for (int i = 0; i < alg.rank(); ++i) l.h(i) = x * (i + 1);
  l.z = VectorXd::Constant(alg.dim_c(), x);
  if (!c.H.empty()) {
    if (static_cast<int>(c.H.size()) != alg.rank())
      throw std::invalid_argument("--H needs " + std::to_string(alg.rank()) + " torus coordinates");
    l.h = Eigen::Map<const VectorXd>(c.H.data(), c.H.size());
  }
  if (!c.Z.empty()) {
    if (static_cast<int>(c.Z.size()) != alg.dim_c())
      throw std::invalid_argument("--Z needs " + std::to_string(alg.dim_c()) + " center coordinates");
    l.z = Eigen::Map<const VectorXd>(c.Z.data(), c.Z.size());
  }
  return l;
}

forms::Functional functional_of(const algebra::LauretAlgebra& alg, const Lambda& l) {
  return l.random ? forms::functional(alg, l.full) : forms::functional(alg, l.h, l.z);
}

// ----------------------------------------------------------------------- verbs

json do_build(const RunConfig& c) {
  auto alg = algebra::build_case(case_spec(c));
  json j;
  j["label"] = alg.spec().label();
  j["dims"] = {{"g", alg.dim_g()}, {"center", alg.dim_c()}, {"g_prime", alg.dim_gprime()},
               {"V", alg.dim_V()}, {"rank", alg.rank()}};
  json blocks = json::array();
  for (const auto& b : alg.blocks())
    blocks.push_back({{"name", b.name}, {"complex_dim", b.complex_dim}, {"coords", b.coords},
                      {"torus_coeff", vec(b.torus_coeff)}, {"center_coeff", vec(b.center_coeff)}});
  j["weight_blocks"] = blocks;
  json pi = json::array();
  for (const auto& p : alg.pi()) {
    json rows = json::array();
    for (int r = 0; r < p.rows(); ++r) rows.push_back(vec(p.row(r).transpose()));
    pi.push_back(rows);
  }
  j["pi"] = pi;
  json checks = json::array();
  for (const auto& ch : algebra::check_structure(alg))
    checks.push_back({{"name", ch.name}, {"defect", ch.defect}, {"pass", ch.pass}});
  j["structure_checks"] = checks;
  return j;
}

json do_classify(const RunConfig& c) {
  auto alg = algebra::build_case(case_spec(c));
  auto l = parse_lambda(c, alg);
  auto f = functional_of(alg, l);
  auto r = forms::classify(alg, f);
  json j;
  j["label"] = alg.spec().label();
  j["functional"] = vec(f.x);
  j["verdict"] = r.verdict == forms::Verdict::SquareIntegrable ? "SquareIntegrable" : "Degenerate";
  j["kernel_dim"] = r.kernel_dim;
  return j;
}

json do_pfaffian(const RunConfig& c) {
  auto alg = algebra::build_case(case_spec(c));
  auto l = parse_lambda(c, alg);
  if (l.random) throw std::invalid_argument("pfaffian needs a numeric --lambda or --H/--Z");
  json j;
  j["label"] = alg.spec().label();
  j["H"] = vec(l.h);
  j["Z"] = vec(l.z);
  double num = forms::pfaffian_abs(forms::skew_form(alg, forms::functional(alg, l.h, l.z)));
  j["numeric"] = num;
  try {
    double w = forms::pfaffian_via_weights(alg, l.h, l.z);
    j["weights"] = w;
    j["rel_diff"] = num > 0 ? std::abs(w - num) / num : std::abs(w - num);
  } catch (const std::invalid_argument&) {
    j["weights"] = nullptr;
    j["rel_diff"] = nullptr;
  }
  return j;
}

std::string do_density(const RunConfig& c) {
  auto alg = algebra::build_case(case_spec(c));
  auto l = parse_lambda(c, alg);
  if (l.random) throw std::invalid_argument("density needs a numeric --lambda or --H/--Z");
  std::ostringstream os;
  os << "# config: " << config_json(c).dump() << "\n";
  os << "t";
  for (int i = 0; i < alg.rank(); ++i) os << ",H" << i;
  for (int i = 0; i < alg.dim_c(); ++i) os << ",Z" << i;
  os << ",theta,pfaffian,density\n";
  const int P = std::max(1, c.points);
  for (int p = 0; p < P; ++p) {
    double t = P == 1 ? c.t_max : c.t_max * p / (P - 1);
    VectorXd h = t * l.h, z = t * l.z;
    auto d = plancherel::density(alg, h, z);
    os << fmt(t);
    for (int i = 0; i < h.size(); ++i) os << "," << fmt(h(i));
    for (int i = 0; i < z.size(); ++i) os << "," << fmt(z(i));
    os << "," << fmt(d.theta) << "," << fmt(d.pfaffian) << "," << fmt(d.value) << "\n";
  }
  return os.str();
}

struct SphericalRow {
  std::vector<int> index;
  int point;
  double z_norm, v_norm;
  cplx value;
  double std_error;
  std::string method;
};

std::vector<SphericalRow> spherical_rows(const RunConfig& c, const algebra::LauretAlgebra& alg, const Lambda& l) {
  const auto spec = alg.spec();
  std::vector<int> j = c.index.empty() ? std::vector<int>(alg.blocks().size(), 0) : c.index;
  if (j.size() != alg.blocks().size())
    throw std::invalid_argument("--index needs one degree per weight block (" +
                                std::to_string(alg.blocks().size()) + ")");
  // unit directions: z along lambda, v along the first coordinate
  VectorXd x = alg.element(l.h, l.z);
  VectorXd zhat = x.norm() > 0 ? VectorXd(x / x.norm()) : VectorXd::Unit(alg.dim_g(), 0);
  VectorXd vhat = VectorXd::Unit(alg.dim_V(), 0);
  std::vector<SphericalRow> rows;
  const int P = std::max(1, c.points);
  for (int p = 0; p < P; ++p) {
    double s = P == 1 ? 1.0 : static_cast<double>(p) / (P - 1);
    VectorXd z = s * c.z_norm * zhat, v = s * c.v_norm * vhat;
    SphericalRow r{j, p, s * c.z_norm, s * c.v_norm, 0.0, 0.0, ""};
    if (spec.kind == algebra::Case::I) {
      r.value = spherical::phi_caseI_closed(x.norm(), j[0], z, v);
      r.method = "closed_form";
    } else {
      auto val = spherical::phi_orbit({spec, l.h, l.z, j}, z, v, c.mc_samples, numerics::batch_seed(c.seed, p));
      r.value = val.value;
      r.std_error = val.std_error;
      r.method = val.method == spherical::Method::ClosedForm ? "closed_form" : "orbit_mc";
    }
    rows.push_back(r);
  }
  return rows;
}

std::string join(const std::vector<int>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
  return s;
}

std::string do_spherical(const RunConfig& c) {
  auto alg = algebra::build_case(case_spec(c));
  auto l = parse_lambda(c, alg);
  if (l.random) throw std::invalid_argument("spherical needs a numeric --lambda or --H/--Z");
  auto rows = spherical_rows(c, alg, l);
  if (c.format == "json") {
    json j;
    j["config"] = config_json(c);
    j["label"] = alg.spec().label();
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"index", r.index}, {"point", r.point}, {"z_norm", r.z_norm}, {"v_norm", r.v_norm},
                     {"re", r.value.real()}, {"im", r.value.imag()}, {"stderr", r.std_error}, {"method", r.method}});
    j["rows"] = arr;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "# config: " << config_json(c).dump() << "\n";
  os << "case,lambda,index,point,z_norm,v_norm,re,im,stderr\n";
  for (const auto& r : rows)
    os << alg.spec().label() << "," << c.lambda << "," << join(r.index, ';') << "," << r.point << ","
       << fmt(r.z_norm) << "," << fmt(r.v_norm) << "," << fmt(r.value.real()) << "," << fmt(r.value.imag()) << ","
       << fmt(r.std_error) << "\n";
  return os.str();
}

json do_invert(const RunConfig& c) {
  auto spec = case_spec(c);
  json j;
  auto start = std::chrono::steady_clock::now();
  if (spec.kind == algebra::Case::VII && spec.n == 1) {
    plancherel::InversionTruncation tr;
    tr.J = c.index.empty() ? 20 : c.index[0];
    tr.w_nodes = c.grid;
    tr.lambda_nodes = c.lambda_nodes;
    const double a = c.width_a, b = c.width_b;
    plancherel::HeisenbergFunction f = [a, b](double t, cplx v) { return cplx(std::exp(-a * t * t - b * std::norm(v))); };
    std::vector<algebra::NPoint> probes;
    const double pts[5][3] = {{0, 0, 0}, {0.5, 0.3, -0.2}, {-0.4, 0.1, 0.6}, {0.2, -0.7, 0.1}, {1.0, 0.5, 0.5}};
    for (const auto& p : pts) {
      algebra::NPoint q{VectorXd::Constant(1, p[0]), VectorXd(2)};
      q.v << p[1], p[2];
      probes.push_back(q);
    }
    auto r = plancherel::heisenberg_inversion_check(f, probes, tr);
    json pp = json::array(), err = json::array(), sums = json::array();
    for (std::size_t i = 0; i < probes.size(); ++i) {
      pp.push_back({probes[i].z(0), probes[i].v(0), probes[i].v(1)});
      err.push_back(r.rel_error[i]);
      sums.push_back({r.sums[i].real(), r.sums[i].imag()});
    }
    j["method"] = "heisenberg_inversion_check";
    j["probe_points"] = pp;
    j["fitted_c"] = r.fitted_c;
    j["per_point_error"] = err;
    j["sums"] = sums;
    j["truncation"] = {{"J", tr.J}, {"lambda_max", tr.lambda_max}, {"lambda_nodes", tr.lambda_nodes},
                       {"box", tr.box}, {"w_nodes", tr.w_nodes}, {"s_nodes", tr.s_nodes}};
  } else if (spec.kind == algebra::Case::I && spec.n == 1) {
    plancherel::CaseIProbeSpec s;
    s.a = c.width_a;
    s.b = c.width_b;
    if (!c.index.empty()) s.J = c.index[0];
    s.samples = c.mc_samples;
    s.seed = c.seed;
    auto r = plancherel::general_inversion_probe(s);
    j["method"] = "general_inversion_probe";
    j["probe_points"] = json::array({"identity"});
    j["rhs"] = {r.rhs.real(), r.rhs.imag()};
    j["std_error"] = r.std_error;
    j["ratio"] = r.ratio;
    j["ratio_error"] = r.ratio_error;
    j["deterministic_ratio"] = r.deterministic_ratio;
    j["samples"] = r.samples;
    j["truncation"] = {{"J", s.J}, {"theta_max", s.theta_max}, {"theta_nodes", s.theta_nodes},
                       {"r_nodes", s.r_nodes}, {"s_nodes", s.s_nodes}};
  } else {
    throw std::invalid_argument("invert supports case VII with n = 1 and case I with n = 1");
  }
  if (c.timing)
    j["runtime"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return j;
}

// -------------------------------------------------------------------- selftest

int do_selftest(std::ostream& os) {
  struct Item {
    std::string name;
    bool pass;
    std::string detail;
  };
  std::vector<Item> items;
  auto mk = [](algebra::Case k, int n, int kk = 0, int k1 = 0, int k2 = 0, int m = 0) {
    algebra::CaseSpec s;
    s.kind = k;
    s.n = n;
    s.k = kk;
    s.k1 = k1;
    s.k2 = k2;
    s.m = m;
    return s;
  };
  using algebra::Case;
  std::vector<algebra::CaseSpec> cases = {mk(Case::I, 1),          mk(Case::II, 1),       mk(Case::III, 0, 0, 1, 1),
                                          mk(Case::IV, 1),         mk(Case::V, 3),        mk(Case::VI, 2),
                                          mk(Case::VI, 3),         mk(Case::VII, 2),      mk(Case::VIII, 1, 1),
                                          mk(Case::IX, 3),         mk(Case::X, 0, 1, 0, 0, 3)};
  std::mt19937_64 rng(20261016);
  std::normal_distribution<double> nd;
  auto rnd = [&](int d) {
    VectorXd v(d);
    for (int i = 0; i < d; ++i) v(i) = nd(rng);
    return v;
  };
  for (const auto& s : cases) {
    auto a = algebra::build_case(s);
    double worst = 0.0;
    for (const auto& ch : algebra::check_structure(a)) worst = std::max(worst, ch.defect);
    items.push_back({"structure " + s.label(), worst < 1e-12, "defect " + fmt(worst)});
    bool degenerate = s.kind == Case::II || (s.kind == Case::VI && s.n % 2 == 1);
    auto v = forms::classify_generic(a, 7).verdict;
    items.push_back({"classify " + s.label(), (v == forms::Verdict::Degenerate) == degenerate, ""});
    if (degenerate) continue;
    VectorXd h = rnd(a.rank()), z = rnd(a.dim_c());
    double num = forms::pfaffian_abs(forms::skew_form(a, forms::functional(a, h, z)));
    double w = forms::pfaffian_via_weights(a, h, z);
    items.push_back({"pfaffian weights " + s.label(), std::abs(w - num) <= 1e-9 * num, fmt(num) + " vs " + fmt(w)});
    if (a.gprime_group()) {
      VectorXd x = a.element(h, z);
      double dev = 0.0;
      for (int t = 0; t < 10; ++t) {
        auto k = a.gprime_automorphism(numerics::haar_sample(*a.gprime_group(), rng));
        double p = forms::pfaffian_abs(forms::skew_form(a, forms::functional(a, k.g_part * x)));
        dev = std::max(dev, std::abs(p - num) / num);
      }
      items.push_back({"pfaffian Ad-invariance " + s.label(), dev < 1e-9, "max rel " + fmt(dev)});
    }
  }
  {
    auto s = mk(Case::VII, 2);
    auto a = algebra::build_case(s);
    double worst = 0.0;
    for (int j = 0; j <= 3; ++j) {
      VectorXd v = rnd(4), z = rnd(1);
      spherical::SphericalIndex idx{s, VectorXd(0), VectorXd::Constant(1, 1.0), {j}};
      cplx closed = spherical::psi_closed(a, idx, z, v);
      cplx trace = fock::psi_numeric({2}, a.blocks()[0].mu(idx.h, idx.z), {j}, z(0), a.blocks()[0].complex_coords(v), 25);
      worst = std::max(worst, std::abs(closed - trace));
    }
    items.push_back({"fock trace vs closed form VII(n=2)", worst < 1e-10, "max abs " + fmt(worst)});
  }
  {
    auto q = numerics::QuadratureSpec::box(2, 14.0, 64);
    std::vector<Eigen::VectorXcd> pts = {Eigen::VectorXcd::Zero(1), Eigen::VectorXcd::Constant(1, cplx(0.5, -0.3))};
    auto off = plancherel::projection_check(1.0, 0, 1, q, pts);
    auto on = plancherel::projection_check(1.0, 1, 1, q, pts);
    items.push_back({"twisted projections", off.max_abs < 1e-8 && on.max_rel_residual < 1e-8,
                     "c' " + fmt(on.c_prime)});
  }
  int failed = 0;
  for (const auto& it : items) {
    os << (it.pass ? "PASS " : "FAIL ") << it.name;
    if (!it.detail.empty()) os << "  (" << it.detail << ")";
    os << "\n";
    failed += !it.pass;
  }
  os << items.size() - failed << "/" << items.size() << " passed\n";
  return failed ? 1 : 0;
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw std::runtime_error("cannot open " + c.out);
  f << text;
}

std::string with_config(const RunConfig& c, json j) {
  json out;
  out["config"] = config_json(c);
  for (auto& [k, v] : j.items()) out[k] = v;
  return out.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic analysis on two-step nilpotent Lie groups N(g, V)"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* s) {
    s->add_option("--case", cfg.case_name, "case I..X (X means the su(m)+su(2)+c instance)");
    s->add_option("--n", cfg.n, "case parameter n");
    s->add_option("--k", cfg.k, "case parameter k");
    s->add_option("--k1", cfg.k1, "case III parameter k1");
    s->add_option("--k2", cfg.k2, "case III parameter k2");
    s->add_option("--m", cfg.m, "case X parameter m");
    s->add_option("--lambda", cfg.lambda, "number or 'random'");
    s->add_option("--H", cfg.H, "torus coordinates of H")->delimiter(',');
    s->add_option("--Z", cfg.Z, "center coordinates of Z")->delimiter(',');
    s->add_option("--j,--index", cfg.index, "spherical index, one degree per weight block; J for invert")
        ->delimiter(',');
    s->add_option("--points", cfg.points, "number of points along the ray")->check(CLI::PositiveNumber);
    s->add_option("--t-max", cfg.t_max, "end of the chamber ray (density)");
    s->add_option("--z-norm", cfg.z_norm, "|z| at the last point (spherical)");
    s->add_option("--v-norm", cfg.v_norm, "|v| at the last point (spherical)");
    s->add_option("--grid", cfg.grid, "quadrature nodes per axis")->check(CLI::PositiveNumber);
    s->add_option("--lambda-nodes", cfg.lambda_nodes, "lambda nodes (invert)")->check(CLI::PositiveNumber);
    s->add_option("--width-a", cfg.width_a, "Gaussian test function: exp(-a|z|^2 - b|v|^2)");
    s->add_option("--width-b", cfg.width_b, "Gaussian test function: exp(-a|z|^2 - b|v|^2)");
    s->add_option("--mc-samples", cfg.mc_samples, "Monte Carlo samples");
    s->add_option("--seed", cfg.seed, "random seed");
    s->add_option("--out", cfg.out, "output file (default stdout)");
    s->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    s->add_flag("--timing", cfg.timing, "add wall-clock runtime to the report");
  };
  for (auto [name, help] : std::vector<std::pair<const char*, const char*>>{
           {"build", "dump the algebra"},
           {"classify", "Moore-Wolf verdict for a functional"},
           {"pfaffian", "numeric Pfaffian against the weight formula"},
           {"density", "Plancherel density along a chamber ray (CSV)"},
           {"spherical", "spherical function values along a ray"},
           {"invert", "Heisenberg inversion check or the case I identity probe"},
           {"selftest", "invariant suite with a scoreboard"}})
    common(app.add_subcommand(name, help));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  cfg.verb = app.get_subcommands().front()->get_name();

  try {
    if (cfg.verb == "selftest") {
      std::ostringstream os;
      int rc = do_selftest(os);
      emit(cfg, os.str());
      return rc;
    }
    if (cfg.verb == "density") {
      emit(cfg, do_density(cfg));
    } else if (cfg.verb == "spherical") {
      emit(cfg, do_spherical(cfg));
    } else {
      json j = cfg.verb == "build"      ? do_build(cfg)
               : cfg.verb == "classify" ? do_classify(cfg)
               : cfg.verb == "pfaffian" ? do_pfaffian(cfg)
                                        : do_invert(cfg);
      emit(cfg, with_config(cfg, j));
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
