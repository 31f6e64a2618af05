// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <doctest.h>

#include <numbers>

#include "cps/basicity.hpp"
#include "cps/error.hpp"
#include "cps/generators.hpp"
#include "support.hpp"

using namespace cps;
using cps::test::Point;

namespace {

const cplx I{0.0, 1.0};
const GroupTag su2 = GroupTag::su(2);
const GroupTag u1 = GroupTag::u1();

struct Setup {
  Grid grid;
  Region region;
  YangMillsScalar theory;
  FieldPoint<cplx> phi;
  FieldTangent<cplx> x, y;

  Setup(int n, GroupTag group, RepTag rep)
      : grid(test::unit_box(2, n)),
        region(Region::flat(grid, Signature::lorentzian(2)).set_slice({0, n / 2})),
        theory(region, group, rep, {0.3, 0.1}),
        phi(random_ym_point(grid, group, rep, {0.5, 2, 3})),
        x(random_ym_tangent(phi, {0.5, 2, 11})),
        y(random_ym_tangent(phi, {0.5, 2, 13})) {}
};

double phase(const Point& x) { return std::sin(2.0 * x[0] + x[1]) + 0.5 * x[0] * x[1]; }

Form<cplx> phase_field(const Grid& g, double rho) {
  return sample_form<cplx>(g, 0, ValueSpace::rep_vector(u1, RepTag::fundamental),
                           [&](std::size_t, const Point& x, int, cplx* v) {
                             *v = rho * std::exp(I * phase(x));
                           });
}

FieldDependentMap<cplx> constant_map(Form<cplx> c) {
  return [c = std::move(c)](const FieldPoint<cplx>&) { return c; };
}

const FieldDependentMap<cplx> polar = dressing_extractor<cplx>(DressingMethod::u1_polar);

}  // namespace

TEST_SUITE("basicity") {

TEST_CASE("dressing methods parse and print") {
  for (auto m : {DressingMethod::u1_polar, DressingMethod::tetrad, DressingMethod::supplied})
    CHECK(parse_dressing_method(to_string(m)) == m);
  CHECK_THROWS_AS(parse_dressing_method("unitary"), ConfigError);
}

TEST_CASE("u1 polar extraction: unit modulus, pure phase and vanishing matter") {
  const Grid g = test::unit_box(2, 6);
  FieldPoint<cplx> phi;
  phi.A = random_algebra_form(g, u1, 1, {0.4, 2, 1});
  phi.matter = constant_field<cplx>(g, ValueSpace::rep_vector(u1, RepTag::fundamental), CMatrix::Constant(1, 1, 1.0));
  const auto one = extract_dressing(phi, DressingMethod::u1_polar);
  for (std::size_t node = 0; node < g.node_count(); ++node)
    CHECK(*one.u.at(node, 0) == cplx(1.0));

  phi.matter = phase_field(g, 2.5);
  const auto u = extract_dressing(phi, DressingMethod::u1_polar);
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    const auto idx = g.index_of(node);
    const Point x{g.coord(0, idx[0]), g.coord(1, idx[1])};
    CHECK(std::abs(*u.u.at(node, 0) - std::exp(I * phase(x))) < 1e-14);
  }

  phi.matter->at(7, 0)[0] = 0.0;
  CHECK_THROWS_AS(extract_dressing(phi, DressingMethod::u1_polar), VanishingModulus);
  FieldPoint<cplx> bare;
  bare.A = phi.A;
  CHECK_THROWS_AS(extract_dressing(bare, DressingMethod::u1_polar), PairingMismatch);
  CHECK_THROWS_AS(extract_dressing(bare, DressingMethod::tetrad), SingularTetrad);
  CHECK_THROWS_AS(extract_dressing(bare, DressingMethod::supplied), ConfigError);
}

TEST_CASE("u1 polar extraction is equivariant: u(phi^gamma) = gamma^{-1} u(phi)") {
  const Setup s(8, u1, RepTag::fundamental);
  const Form<cplx> gamma = random_group_field(s.grid, u1, {0.8, 2, 4});
  const Form<cplx> u0 = polar(s.phi);
  const Form<cplx> u1v = polar(gauge_transform(s.phi, gamma));
  double worst = 0.0;
  for (std::size_t node = 0; node < s.grid.node_count(); ++node)
    worst = std::max(worst, std::abs(*u1v.at(node, 0) - std::conj(*gamma.at(node, 0)) * *u0.at(node, 0)));
  CHECK(worst < 1e-14);
}

TEST_CASE("dressed fields: identity, real positive matter and the abelian shift") {
  const Grid g = test::unit_box(2, 6);
  const Setup s(6, u1, RepTag::fundamental);
  const Form<cplx> one = constant_field<cplx>(g, ValueSpace::group_valued(u1), CMatrix::Identity(1, 1));
  const FieldPoint<cplx> same = dress_fields(s.phi, one);
  CHECK(test::max_diff(same.A, s.phi.A) == 0.0);

  const FieldPoint<cplx> dressed = dress_fields(s.phi, polar(s.phi));
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    const cplx m = *dressed.matter->at(node, 0);
    CHECK(std::abs(m.imag()) < 1e-14);
    CHECK(m.real() > 0.0);
    CHECK(m.real() == doctest::Approx(std::abs(*s.phi.matter->at(node, 0))));
  }

  // A^u = A + i d(phase) up to the O(h^2) lattice derivative.
  std::vector<double> h, err;
  for (int n : {8, 16, 32}) {
    const Grid gn = test::unit_box(2, n);
    FieldPoint<cplx> phi;
    phi.A = random_algebra_form(gn, u1, 1, {0.4, 2, 5});
    phi.matter = phase_field(gn, 1.3);
    const Form<cplx> shifted = dress_fields(phi, polar(phi)).A;
    const Form<cplx> expect =
        phi.A + sample_form<cplx>(gn, 1, phi.A.space(), [](std::size_t, const Point& x, int c, cplx* v) {
          const double d0 = 2.0 * std::cos(2.0 * x[0] + x[1]) + 0.5 * x[1];
          const double d1 = std::cos(2.0 * x[0] + x[1]) + 0.5 * x[0];
          *v = I * (c == 0 ? d0 : d1);
        });
    h.push_back(1.0 / n);
    err.push_back(test::max_diff(shifted, expect));
  }
  CHECK(test::slope(h, err) > 1.8);
}

TEST_CASE("dressed fields are gauge invariant") {
  const Setup s(8, u1, RepTag::fundamental);
  const Form<cplx> c = random_constant_group(s.grid, u1, 6);
  const FieldPoint<cplx> d0 = dress_fields(s.phi, polar(s.phi));
  const FieldPoint<cplx> moved = gauge_transform(s.phi, c);
  const FieldPoint<cplx> d1 = dress_fields(moved, polar(moved));
  CHECK(test::max_diff(d1.A, d0.A) < 1e-13);
  CHECK(test::max_diff(*d1.matter, *d0.matter) < 1e-14);

  std::vector<double> h, err;
  for (int n : {8, 16, 32}) {
    const Setup t(n, u1, RepTag::fundamental);
    const FieldPoint<cplx> moved_n = gauge_transform(t.phi, random_group_field(t.grid, u1, {0.8, 2, 7}));
    const FieldPoint<cplx> a = dress_fields(t.phi, polar(t.phi));
    const FieldPoint<cplx> b = dress_fields(moved_n, polar(moved_n));
    CHECK(test::max_diff(*a.matter, *b.matter) < 1e-14);
    h.push_back(1.0 / n);
    err.push_back(test::max_diff(a.A, b.A));
  }
  CHECK(test::slope(h, err) > 1.8);
}

TEST_CASE("basic potential via Singer-deWitt") {
  const Setup s(7, su2, RepTag::fundamental);
  const auto sdw = singer_dewitt_connection<cplx>({1e-12, 100000});
  const auto b0 = basic_theta_via_connection<cplx>(s.theory, sdw, s.phi, s.x);
  CHECK(b0.basic == doctest::Approx(b0.theta - b0.omega_charge).epsilon(1e-15));
  CHECK(std::abs(b0.omega_charge) > 1e-6);

  SUBCASE("invariant under constant gamma") {
    const Form<cplx> gamma = random_constant_group(s.grid, su2, 99);
    const auto b1 = basic_theta_via_connection<cplx>(s.theory, sdw, gauge_transform(s.phi, gamma),
                                                     gauge_pushforward(s.x, gamma));
    CHECK(std::abs(b1.basic - b0.basic) < 1e-10 * std::abs(b0.basic));
  }
  SUBCASE("zero connection leaves theta unchanged") {
    const FieldSpaceConnection<cplx> none{
        "zero", [](const FieldPoint<cplx>& p, const FieldTangent<cplx>&) {
          return Form<cplx>(p.grid(), 0, p.A.space());
        }};
    const auto b = basic_theta_via_connection<cplx>(s.theory, none, s.phi, s.x);
    CHECK(b.basic == b.theta);
    CHECK(b.basic_projected == b.theta);
  }
}

TEST_CASE("basic potential of the flat dressing connection is invariant under varying gamma") {
  const auto omega = flat_from_dressing<cplx>(polar);
  std::vector<double> h, err;
  for (int n : {8, 16, 32}) {
    const Setup s(n, u1, RepTag::fundamental);
    const Form<cplx> gamma = random_group_field(s.grid, u1, {0.8, 2, 8});
    const auto b0 = basic_theta_via_connection<cplx>(s.theory, omega, s.phi, s.x);
    const auto b1 = basic_theta_via_connection<cplx>(s.theory, omega, gauge_transform(s.phi, gamma),
                                                     gauge_pushforward(s.x, gamma));
    h.push_back(1.0 / n);
    err.push_back(std::abs(b1.basic - b0.basic) / std::abs(b0.basic));
  }
  CHECK(test::slope(h, err) > 1.8);
}

TEST_CASE("dressed potential: formula against the pullback and a closed-form oracle") {
  // The pullback path differentiates u^{-1} d u on the lattice, so it meets the
  // formula at O(h^2); the formula itself matches the oracle to FD accuracy.
  std::vector<double> h, e_theta, e_Theta;
  for (int n : {8, 16, 32}) {
    const Setup t(n, u1, RepTag::fundamental);
    const auto r = dressed_presymplectic<cplx>(t.theory, t.phi, polar, t.x, t.y);
    h.push_back(1.0 / n);
    e_theta.push_back(r.theta_residual() / std::abs(r.theta_direct));
    e_Theta.push_back(r.Theta_residual() / std::abs(r.Theta_direct));
  }
  CHECK(test::slope(h, e_theta) > 1.8);
  CHECK(test::slope(h, e_Theta) > 1.8);

  const Setup s(12, u1, RepTag::fundamental);
  const auto r = dressed_presymplectic<cplx>(s.theory, s.phi, polar, s.x, s.y);

  // du u^{-1}(X) = i Im(dm / m) for the polar dressing.
  const Form<cplx> mc = sample_form<cplx>(s.grid, 0, ValueSpace::algebra(u1),
                                          [&](std::size_t node, const Point&, int, cplx* v) {
                                            const cplx m = *s.phi.matter->at(node, 0);
                                            const cplx dm = *s.x.matter->at(node, 0);
                                            *v = I * (dm / m).imag();
                                          });
  const double oracle = theta_sigma<cplx>(s.theory, s.phi, s.x) + noether_charge<cplx>(s.theory, mc, s.phi).value;
  CHECK(std::abs(r.theta_formula - oracle) < 1e-6 * std::abs(oracle));
}

TEST_CASE("residual transformations of the dressing") {
  const Setup s(12, u1, RepTag::fundamental);
  SUBCASE("identity xi") {
    const Form<cplx> one = constant_field<cplx>(s.grid, ValueSpace::group_valued(u1), CMatrix::Identity(1, 1));
    const auto r = residual_transform<cplx>(s.theory, s.phi, polar, constant_map(one), s.x);
    CHECK(r.shift_direct == 0.0);
    CHECK(r.shift_formula == 0.0);
  }
  SUBCASE("constant xi only rephases the dressed fields") {
    const auto r = residual_transform<cplx>(s.theory, s.phi, polar,
                                            constant_map(random_constant_group(s.grid, u1, 9)), s.x);
    CHECK(r.shift_formula == 0.0);
    CHECK(std::abs(r.shift_direct) < 1e-8 * std::abs(r.theta_dressed));
  }
  SUBCASE("field-dependent xi: both paths agree") {
    const FieldDependentMap<cplx> xi = exponentiated(matter_density_parameter(0.3));
    const Form<cplx> gamma = random_group_field(s.grid, u1, {0.8, 2, 10});
    const auto r = residual_transform<cplx>(s.theory, s.phi, polar, xi, s.x, {}, &gamma);
    CHECK(r.invariance_residual < 1e-13);
    CHECK(std::abs(r.shift_direct) > 1e-4);
    std::vector<double> h, err;
    for (int n : {8, 16, 32}) {
      const Setup t(n, u1, RepTag::fundamental);
      const auto rn = residual_transform<cplx>(t.theory, t.phi, polar, xi, t.x);
      h.push_back(1.0 / n);
      err.push_back(rn.residual() / std::abs(rn.shift_direct));
    }
    CHECK(test::slope(h, err) > 1.8);
  }
}

TEST_CASE("dressed gravity charge equals the Komar charge") {
  const double th0 = std::numbers::pi / 2 - 0.4;
  const std::vector<double> lo{0.0, 2.6, th0, 0.0}, hi{1.0, 3.0, th0 + 0.8, 0.8};
  const std::vector<int> c{2, 6, 6, 6};
  const Grid g = Grid::box(lo, hi, c);
  const AnalyticGeometry geo = analytic_metric("schwarzschild_ads", g, 1.0, 1.0);
  const FieldPoint<double> phi{levi_civita_connection(geo.tetrad), std::nullopt, geo.tetrad,
                               geo.ell, geo.lambda_sign};
  const GravityData data = tetrad_dressing(phi, Signature::lorentzian(4));
  const Form<double> zeta = time_translation(g);
  const auto komar = komar_charge(data, zeta);
  const DressedGravity dg = dressed_gravity(data);
  const auto dressed = dressed_charge<double>(dg.theory, killing_gradient(data.Gamma, zeta), dg.point,
                                              komar_faces(KomarSurface::outer));
  CHECK(dressed.boundary_part == komar.value);

  const auto u = extract_dressing(phi, DressingMethod::tetrad);
  CHECK(test::max_diff(u.u, geo.tetrad) == 0.0);
}

}
