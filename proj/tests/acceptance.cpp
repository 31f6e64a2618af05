// Distributed under the MIT License.
// See LICENSE.txt for details.

// One PASS/FAIL line per acceptance criterion. Tolerances are fixed here.

#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "cps/basicity.hpp"
#include "cps/charges.hpp"
#include "cps/generators.hpp"
#include "support.hpp"

using namespace cps;
using cps::test::Point;

namespace {

namespace tol {
constexpr double min_order = 1.8;
constexpr double roundoff = 1e-10;
constexpr double variational_finest = 1e-4;
constexpr double onshell_ratio = 1e-3;
constexpr double decomposition = 1e-13;
constexpr double bracket = 1e-5;
constexpr double jacobi_factor = 3.0;
constexpr double transform = 1e-5;
constexpr double toy_relations = 1e-4;
constexpr double ambiguity = 1e-5;
constexpr double coulomb = 1e-2;
constexpr double ads_ratio = 1e-3;
constexpr double komar = 2e-2;
constexpr double dressed_komar = 1e-12;
constexpr double hand_dressed = 1e-6;
constexpr double flat_curvature = 1e-5;
}  // namespace tol

const cplx I{0.0, 1.0};
const GroupTag su2 = GroupTag::su(2);
const GroupTag u1 = GroupTag::u1();

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const char* what, double value) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s=%.3g%s", detail.empty() ? "" : "; ", what, value,
                  ok ? "" : "(!)");
    detail += buf;
    pass = pass && ok;
  }
  void below(const char* what, double value, double limit) { require(value < limit, what, value); }
  void order(const char* what, const std::vector<double>& h, const std::vector<double>& e) {
    const double s = test::slope(h, e);
    require(s >= tol::min_order, what, s);
  }
  // Reported but not gated.
  void note(const char* what, double value) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s[%s=%.3g]", detail.empty() ? "" : "; ", what, value);
    detail += buf;
  }
};

// Extrapolated limit of a quantity with O(h^2) error from the two finest levels.
double richardson(const std::vector<double>& d) {
  const std::size_t n = d.size();
  return (4.0 * d[n - 1] - d[n - 2]) / 3.0;
}

FieldDependentMap<cplx> constant_map(Form<cplx> c) {
  return [c = std::move(c)](const FieldPoint<cplx>&) { return c; };
}

struct Square {
  Grid grid;
  Region region;
  YangMillsScalar theory;
  FieldPoint<cplx> phi;
  FieldTangent<cplx> x, y;

  Square(int n, GroupTag group, RepTag rep, int slice_index = -1)
      : grid(test::unit_box(2, n)),
        region(Region::flat(grid, Signature::lorentzian(2))
                   .set_slice({0, slice_index < 0 ? n / 2 : slice_index})),
        theory(region, group, rep, {0.3, 0.1}),
        phi(random_ym_point(grid, group, rep, {0.5, 2, 3})),
        x(random_ym_tangent(phi, {0.5, 2, 11})),
        y(random_ym_tangent(phi, {0.5, 2, 13})) {}

  VariationalOneForm<cplx> theta() const {
    return [this](const FieldPoint<cplx>& p, const FieldTangent<cplx>& z) {
      return theta_sigma<cplx>(theory, p, z);
    };
  }
};

double rel(const Form<cplx>& a, const Form<cplx>& b) {
  return test::max_diff(a, b) / std::max(1e-300, b.max_abs());
}

Verdict variational() {
  Verdict v;
  for (int dim : {2, 3}) {
    std::vector<double> h, e;
    for (int n : {16, 32, 64}) {
      const Grid g = test::unit_box(dim, n);
      const YangMillsScalar th(Region::flat(g, Signature::lorentzian(dim)), su2, RepTag::fundamental,
                               {0.3, 0.1});
      const FieldPoint<cplx> phi = random_ym_point(g, su2, RepTag::fundamental, {0.5, 2, 3});
      const auto r = variational_identity<cplx>(th, phi, random_ym_tangent(phi, {0.5, 2, 11}));
      h.push_back(1.0 / n);
      e.push_back(r.residual / r.theta_norm);
    }
    v.order(dim == 2 ? "order2D" : "order3D", h, e);
    v.below(dim == 2 ? "rel2D" : "rel3D", e.back(), tol::variational_finest);
  }
  return v;
}

struct CovarianceDefects {
  double curvature, action, theta, field_eq, field_eq_full;
};

CovarianceDefects covariance(int n, bool varying) {
  const Square s(n, su2, RepTag::fundamental);
  const Form<cplx> gamma = varying ? random_group_field(s.grid, su2, {0.8, 2, 21})
                                   : random_constant_group(s.grid, su2, 21);
  const FieldPoint<cplx> moved = gauge_transform(s.phi, gamma);
  const FieldTangent<cplx> pushed = gauge_pushforward(s.x, gamma);
  CovarianceDefects d;
  d.curvature = rel(curvature(moved.A), conjugate(gamma, curvature(s.phi.A)));
  const double s0 = integrate_scalar(s.theory.lagrangian(s.phi)).real();
  d.action = std::abs(integrate_scalar(s.theory.lagrangian(moved)).real() - s0) / std::abs(s0);
  const double t0 = theta_sigma<cplx>(s.theory, s.phi, s.x);
  d.theta = std::abs(theta_sigma<cplx>(s.theory, moved, pushed) - t0) / std::abs(t0);
  // E carries second derivatives, so the two outer node rows see nested
  // one-sided stencils and converge at first order only.
  const Form<cplx> e1 = s.theory.field_equation(moved, pushed);
  const Form<cplx> e0 = s.theory.field_equation(s.phi, s.x);
  d.field_eq = test::interior_max_diff(e1, e0, 2) / e0.max_abs();
  d.field_eq_full = rel(e1, e0);
  return d;
}

Verdict gauge_covariance() {
  Verdict v;
  const auto c = covariance(8, false);
  v.below("F_const", c.curvature, tol::roundoff);
  v.below("L_const", c.action, tol::roundoff);
  v.below("theta_const", c.theta, tol::roundoff);
  v.below("E_const", c.field_eq_full, tol::roundoff);
  std::vector<double> h, f, l, t, e, e_full;
  for (int n : {16, 32, 64}) {
    const auto d = covariance(n, true);
    h.push_back(1.0 / n);
    f.push_back(d.curvature);
    l.push_back(d.action);
    t.push_back(d.theta);
    e.push_back(d.field_eq);
    e_full.push_back(d.field_eq_full);
  }
  v.order("F_order", h, f);
  v.order("L_order", h, l);
  v.order("theta_order", h, t);
  v.order("E_order", h, e);
  v.note("E_order_with_boundary", test::slope(h, e_full));
  return v;
}

Verdict charge_structure() {
  Verdict v;
  std::vector<double> h, ratio;
  for (int n : {16, 32, 64}) {
    const std::vector<double> lo{0, -1, -1}, hi{0.5, 1, 1};
    const std::vector<int> cells{4, n, n};
    const Grid g = Grid::box(lo, hi, cells);
    const YangMillsScalar ym(Region::flat(g, Signature::lorentzian(3)).set_slice({0, 2}), u1,
                             RepTag::fundamental);
    const auto q = noether_charge<cplx>(ym, constant_algebra(g, u1, {1.0}), bessel_onshell(g, 2.0, 0.7));
    h.push_back(1.0 / n);
    ratio.push_back(std::abs(q.bulk_part / q.boundary_part));
  }
  v.below("bulk/boundary@64", ratio.back(), tol::onshell_ratio);
  v.order("ratio_order", h, ratio);

  const Square s(16, su2, RepTag::fundamental);
  const auto q = noether_charge<cplx>(s.theory, random_algebra_form(s.grid, su2, 0, {0.4, 2, 7}), s.phi);
  const double scale = std::max(std::abs(q.boundary_part), std::abs(q.bulk_part));
  v.below("offshell_decomposition", std::abs(q.value - (q.boundary_part - q.bulk_part)) / scale,
          tol::decomposition);
  v.require(std::abs(q.bulk_part) > 1e-3 * scale, "offshell_bulk", std::abs(q.bulk_part) / scale);
  return v;
}

Verdict bracket_morphism() {
  Verdict v;
  const std::vector<double> ca{0.3, -0.5, 0.7}, cb{-0.2, 0.4, 0.1}, cc{0.6, 0.2, -0.4};
  std::vector<double> d_const, d_fd, jacobi, jacobi_scale, antisym;
  double b_const = 0.0, b_fd = 0.0;
  for (int n : {16, 32, 64}) {
    const Square s(n, su2, RepTag::fundamental);
    const Form<cplx> a = constant_algebra(s.grid, su2, ca);
    const Form<cplx> b = constant_algebra(s.grid, su2, cb);
    const Form<cplx> c = constant_algebra(s.grid, su2, cc);
    const auto ab = poisson_bracket<cplx>(s.theory, constant_map(a), constant_map(b), s.phi);
    const auto ba = poisson_bracket<cplx>(s.theory, constant_map(b), constant_map(a), s.phi);
    antisym.push_back(std::abs(ab.bracket + ba.bracket) / std::abs(ab.bracket));
    d_const.push_back(ab.bracket - ab.charge_pointwise);
    b_const = ab.bracket;

    const auto fa = offset_parameter(matter_moment_parameter(0.5), a);
    const auto fb = offset_parameter(potential_average_parameter(0, 1, 0.8), b);
    const auto fd = poisson_bracket<cplx>(s.theory, fa, fb, s.phi);
    d_fd.push_back(fd.bracket - fd.charge_pointwise);
    b_fd = fd.bracket;

    // Theta([a,b]^v, c^v) summed cyclically.
    double sum = 0.0, mag = 0.0;
    const Form<cplx>* trip[3] = {&a, &b, &c};
    for (int k = 0; k < 3; ++k) {
      const Form<cplx>& p = *trip[k];
      const Form<cplx>& q = *trip[(k + 1) % 3];
      const Form<cplx>& r = *trip[(k + 2) % 3];
      const auto t = poisson_bracket<cplx>(s.theory, constant_map(algebra_commutator(p, q)), constant_map(r), s.phi);
      sum += t.bracket;
      mag = std::max(mag, std::abs(t.bracket));
    }
    jacobi.push_back(sum);
    jacobi_scale.push_back(mag);
  }
  v.below("const_richardson", std::abs(richardson(d_const)) / std::abs(b_const), tol::bracket);
  v.below("fielddep_richardson", std::abs(richardson(d_fd)) / std::abs(b_fd), tol::bracket);
  v.below("antisymmetry", *std::max_element(antisym.begin(), antisym.end()), tol::roundoff);
  v.below("jacobi", std::abs(richardson(jacobi)) / jacobi_scale.back(), tol::jacobi_factor * tol::bracket);
  return v;
}

Verdict transformation_two_path() {
  Verdict v;
  std::vector<double> d_theta, d_Theta, d_E;
  double theta = 0.0, Theta = 0.0, E = 0.0;
  for (int n : {16, 32, 64}) {
    const Square s(n, su2, RepTag::fundamental);
    const auto gamma = exponentiated(
        offset_parameter(matter_moment_parameter(0.5), constant_algebra(s.grid, su2, {0.2, 0.1, -0.3})));
    const auto t = gauge_transformed_presymplectic<cplx>(s.theory, gamma, s.phi, s.x, s.y);
    d_theta.push_back(t.theta_pullback - t.theta_formula);
    d_Theta.push_back(t.Theta_pullback - t.Theta_formula);
    d_E.push_back(t.E_pullback - t.E_formula);
    theta = std::abs(t.theta_formula);
    Theta = std::abs(t.Theta_formula);
    E = std::max(1.0, std::abs(t.E_formula));
  }
  v.below("theta", std::abs(richardson(d_theta)) / theta, tol::transform);
  v.below("Theta", std::abs(richardson(d_Theta)) / Theta, tol::transform);
  v.below("E", std::abs(richardson(d_E)) / E, tol::transform);
  return v;
}

Verdict toy_relations() {
  Verdict v;
  const Square t(7, su2, RepTag::fundamental, 3);
  const auto chi = offset_parameter(matter_moment_parameter(0.5), constant_algebra(t.grid, su2, {0.3, -0.5, 0.7}));
  const auto eta = offset_parameter(potential_average_parameter(0, 1, 0.8),
                                    constant_algebra(t.grid, su2, {-0.2, 0.4, 0.1}));
  const auto probe = random_ym_tangent(t.phi, {0.5, 2, 17});
  std::vector<double> steps, worst;
  for (double step : {1e-2, 5e-3, 2.5e-3}) {
    const auto check = check_extended_bracket(chi, eta, t.phi, t.theta(), probe, {0.0, step, false});
    double w = 0.0;
    for (const auto& r : check.relations) w = std::max(w, r.residual / std::max(r.scale, 1.0));
    steps.push_back(step);
    worst.push_back(w);
  }
  const auto dflt = check_extended_bracket(chi, eta, t.phi, t.theta(), probe);
  double w = 0.0;
  for (const auto& r : dflt.relations) w = std::max(w, r.residual / std::max(r.scale, 1.0));
  v.below("relations", w, tol::toy_relations);
  v.order("relations_step_order", steps, worst);

  const auto sdw = singer_dewitt_connection<cplx>({1e-12, 100000});
  const auto flat = flat_from_dressing<cplx>(dressing_extractor<cplx>(DressingMethod::u1_polar));
  {
    const Square a(7, u1, RepTag::none, 3);
    v.below("formula_u1_sdw", check_formula1(a.theta(), sdw, a.phi, a.x, a.y).residual, tol::toy_relations);
    const Square b(7, su2, RepTag::fundamental, 3);
    v.below("formula_su2_sdw", check_formula1(b.theta(), sdw, b.phi, b.x, b.y).residual, tol::toy_relations);
    const Square c(7, u1, RepTag::fundamental, 3);
    v.below("formula_u1_flat", check_formula1(c.theta(), flat, c.phi, c.x, c.y).residual, tol::toy_relations);
  }
  // Successive differences of d(alpha^h)(X, Y) as the FD step halves.
  const Square b(7, su2, RepTag::fundamental, 3);
  std::vector<double> fd_steps, rhs;
  for (double step : {1e-2, 5e-3, 2.5e-3, 1.25e-3})
    rhs.push_back(check_formula1(b.theta(), sdw, b.phi, b.x, b.y, {0.0, step, false}).rhs_exact);
  std::vector<double> jumps;
  for (std::size_t k = 0; k + 1 < rhs.size(); ++k) {
    fd_steps.push_back(steps[k]);
    jumps.push_back(std::abs(rhs[k] - rhs[k + 1]));
  }
  v.order("formula_step_order", fd_steps, jumps);
  // Lattice order of the non-abelian and flat-connection residuals.
  std::vector<double> h, e_su2, e_flat;
  for (int n : {7, 14, 28}) {
    const Square t2(n, su2, RepTag::fundamental, 3 * n / 7);
    const Square t1(n, u1, RepTag::fundamental, 3 * n / 7);
    h.push_back(1.0 / n);
    e_su2.push_back(check_formula1(t2.theta(), sdw, t2.phi, t2.x, t2.y).residual);
    e_flat.push_back(check_formula1(t1.theta(), flat, t1.phi, t1.x, t1.y).residual);
  }
  v.note("formula_su2_grid_order", test::slope(h, e_su2));
  v.note("formula_flat_grid_order", test::slope(h, e_flat));
  return v;
}

double basic_defect(const FieldSpaceConnection<cplx>& omega, int n, GroupTag group, bool varying) {
  const Square s(n, group, RepTag::fundamental);
  const Form<cplx> gamma = varying ? random_group_field(s.grid, group, {0.8, 2, 8})
                                   : random_constant_group(s.grid, group, 8);
  const auto b0 = basic_theta_via_connection<cplx>(s.theory, omega, s.phi, s.x);
  const auto b1 = basic_theta_via_connection<cplx>(s.theory, omega, gauge_transform(s.phi, gamma),
                                                   gauge_pushforward(s.x, gamma));
  return std::abs(b1.basic - b0.basic) / std::abs(b0.basic);
}

double dressed_defect(int n, bool varying, const FieldDependentMap<cplx>& polar) {
  const Square s(n, u1, RepTag::fundamental);
  const Form<cplx> gamma = varying ? random_group_field(s.grid, u1, {0.8, 2, 8})
                                   : random_constant_group(s.grid, u1, 8);
  const auto d0 = dressed_presymplectic<cplx>(s.theory, s.phi, polar, s.x, s.y);
  const auto d1 = dressed_presymplectic<cplx>(s.theory, gauge_transform(s.phi, gamma), polar,
                                              gauge_pushforward(s.x, gamma), gauge_pushforward(s.y, gamma));
  return std::abs(d1.theta_formula - d0.theta_formula) / std::abs(d0.theta_formula);
}

Verdict basicity() {
  Verdict v;
  const auto polar = dressing_extractor<cplx>(DressingMethod::u1_polar);
  const auto sdw = singer_dewitt_connection<cplx>({1e-12, 100000});
  const auto flat = flat_from_dressing<cplx>(polar);

  v.below("sdw_const", basic_defect(sdw, 8, su2, false), tol::roundoff);
  v.below("flat_const", basic_defect(flat, 8, u1, false), tol::roundoff);
  v.below("dressed_const", dressed_defect(8, false, polar), tol::roundoff);
  std::vector<double> h, e_sdw, e_flat, e_dressed;
  for (int n : {8, 16, 32}) {
    h.push_back(1.0 / n);
    e_sdw.push_back(basic_defect(sdw, n, su2, true));
    e_flat.push_back(basic_defect(flat, n, u1, true));
    e_dressed.push_back(dressed_defect(n, true, polar));
  }
  v.order("sdw_order", h, e_sdw);
  v.order("flat_order", h, e_flat);
  v.order("dressed_order", h, e_dressed);

  // Connection shift by beta(X) = d(matter density)(X).
  {
    const Square s(12, su2, RepTag::fundamental);
    const auto density = matter_density_parameter(0.4);
    const std::function<Form<cplx>(const FieldPoint<cplx>&, const FieldTangent<cplx>&)> beta =
        [density](const FieldPoint<cplx>& p, const FieldTangent<cplx>& x) {
          return fs_directional([&](const FieldPoint<cplx>& q) { return density(q); }, p, x).value;
        };
    const auto b0 = basic_theta_via_connection<cplx>(s.theory, sdw, s.phi, s.x);
    const auto b1 = basic_theta_via_connection<cplx>(s.theory, shifted(sdw, beta), s.phi, s.x);
    const double formula = -noether_charge<cplx>(s.theory, beta(s.phi, s.x), s.phi).value;
    v.below("connection_shift", std::abs((b1.basic - b0.basic) - formula) / std::abs(formula), tol::ambiguity);
  }

  std::vector<double> d_shift;
  double shift = 0.0;
  const FieldDependentMap<cplx> xi = exponentiated(matter_density_parameter(0.3));
  for (int n : {16, 32, 64}) {
    const Square s(n, u1, RepTag::fundamental);
    const auto r = residual_transform<cplx>(s.theory, s.phi, polar, xi, s.x);
    d_shift.push_back(r.shift_direct - r.shift_formula);
    shift = std::abs(r.shift_direct);
  }
  v.below("dressing_shift_richardson", std::abs(richardson(d_shift)) / shift, tol::ambiguity);
  return v;
}

Verdict abbott_deser() {
  Verdict v;
  const double oracle = std::pow(std::erf(1.0 / (0.25 * std::numbers::sqrt2)), 2);
  std::vector<double> h, stokes;
  double enclosed = 0.0;
  for (int n : {32, 48, 64}) {
    const std::vector<double> lo{0, -1, -1}, hi{1, 1, 1};
    const std::vector<int> cells{n, n, n};
    const Grid g = Grid::box(lo, hi, cells);
    const Region r = Region::flat(g, Signature::lorentzian(3)).set_slice({0, n / 2});
    const YangMillsScalar ym(r, u1, RepTag::none);
    const FieldPoint<cplx> phi = smoothed_coulomb(g, 1.0, 0.25);
    const auto ab = ab_charge(ym, constant_algebra(g, u1, {1.0}), background_split(phi.A, zero_like(phi.A), r), 1e-8);
    h.push_back(1.0 / n);
    stokes.push_back(std::abs(ab.bulk_current - ab.charge.value) / std::abs(ab.charge.value));
    if (n == 48) enclosed = ab.charge.value;
  }
  v.below("enclosed@48", std::abs(enclosed / oracle - 1), tol::coulomb);
  v.order("bulk_vs_boundary_order", h, stokes);
  return v;
}

Grid shell_patch(int cells, int time_cells) {
  const double th0 = std::numbers::pi / 2 - 0.4;
  const std::vector<double> lo{0.0, 2.6, th0, 0.0}, hi{1.0, 3.0, th0 + 0.8, 0.8};
  const std::vector<int> c{time_cells, cells, cells, cells};
  return Grid::box(lo, hi, c);
}

GravityData gravity_on(const std::string& name, const Grid& g, double mass) {
  const AnalyticGeometry geo = analytic_metric(name, g, mass, 1.0);
  const FieldPoint<double> phi{levi_civita_connection(geo.tetrad), std::nullopt, geo.tetrad, geo.ell,
                               geo.lambda_sign};
  return tetrad_dressing(phi, Signature::lorentzian(4));
}

// Outer-face charge of Schwarzschild-AdS with mass 1 and ell 1 on shell_patch.
double komar_oracle() {
  const double r1 = 3.0, th0 = std::numbers::pi / 2 - 0.4, th1 = th0 + 0.8;
  return 4 * (2 / (r1 * r1 * r1) + 2) * 0.8 * (std::cos(th0) - std::cos(th1));
}

Verdict komar() {
  Verdict v;
  const double oracle = komar_oracle();
  std::vector<double> h, err;
  for (int n : {12, 16, 24}) {
    const Grid g = shell_patch(n, 2);
    h.push_back(1.0 / n);
    err.push_back(std::abs(komar_charge(gravity_on("schwarzschild_ads", g, 1.0), time_translation(g)).value / oracle - 1));
  }
  v.order("sads_order", h, err);
  const Grid g = shell_patch(32, 8);
  const double sads = komar_charge(gravity_on("schwarzschild_ads", g, 1.0), time_translation(g)).value;
  v.below("sads@32^3x8", std::abs(sads / oracle - 1), tol::komar);
  const double ads = komar_charge(gravity_on("antiDeSitter", g, 0.0), time_translation(g)).value;
  v.below("ads/sads@32^3x8", std::abs(ads / sads), tol::ads_ratio);
  return v;
}

Verdict dressing_equivalences() {
  Verdict v;
  {
    const Grid g = shell_patch(8, 2);
    const GravityData data = gravity_on("schwarzschild_ads", g, 1.0);
    const Form<double> zeta = time_translation(g);
    const auto k = komar_charge(data, zeta);
    const DressedGravity dg = dressed_gravity(data);
    const auto d = dressed_charge<double>(dg.theory, killing_gradient(data.Gamma, zeta), dg.point,
                                          komar_faces(KomarSurface::outer));
    v.below("dressed_vs_komar", std::abs(d.boundary_part - k.value) / std::abs(k.value), tol::dressed_komar);
  }
  const auto polar = dressing_extractor<cplx>(DressingMethod::u1_polar);
  {
    const Square s(12, u1, RepTag::fundamental);
    const auto r = dressed_presymplectic<cplx>(s.theory, s.phi, polar, s.x, s.y);
    // Hand-dressed kernel: du u^{-1}(X) = i Im(dm / m).
    const Form<cplx> mc = sample_form<cplx>(s.grid, 0, ValueSpace::algebra(u1),
                                            [&](std::size_t node, const Point&, int, cplx* out) {
                                              const cplx m = *s.phi.matter->at(node, 0);
                                              const cplx dm = *s.x.matter->at(node, 0);
                                              *out = I * (dm / m).imag();
                                            });
    const double hand = theta_sigma<cplx>(s.theory, s.phi, s.x) + noether_charge<cplx>(s.theory, mc, s.phi).value;
    v.below("abelian_dressed_theta", std::abs(r.theta_formula - hand) / std::abs(hand), tol::hand_dressed);
  }
  {
    const Square s(7, u1, RepTag::fundamental, 3);
    const auto curv = connection_curvature(flat_from_dressing<cplx>(polar), s.phi, s.x, s.y);
    v.below("flat_curvature", fd_norm(curv.value), tol::flat_curvature);
  }
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"variational identity", variational},
      {"gauge covariance", gauge_covariance},
      {"charge structure", charge_structure},
      {"bracket morphism", bracket_morphism},
      {"field-dependent transformation", transformation_two_path},
      {"commutation relations and horizontal formula", toy_relations},
      {"basicity", basicity},
      {"Abbott-Deser charge", abbott_deser},
      {"Komar charge", komar},
      {"dressing equivalences", dressing_equivalences},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failures += v.pass ? 0 : 1;
    std::printf("criterion %2zu %s %s: %s\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first,
                v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
