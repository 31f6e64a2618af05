// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cps/calculus.hpp"
#include "cps/lie.hpp"
#include "support.hpp"

using namespace cps;
using cps::test::Point;

namespace {

// Brute-force Hodge: (*w)_{J} = sqrt|g| / p! w^{I} eps_{I J}, all indices
// summed over every ordering.
double brute_hodge(const Form<double>& w, const MetricMatrix& gm, std::size_t node,
                   const std::vector<int>& out_idx) {
  const int n = w.grid().dim, p = w.degree();
  const MetricMatrix gi = gm.inverse();
  const double vol = std::sqrt(std::abs(gm.determinant()));
  double fact = 1.0;
  for (int k = 2; k <= p; ++k) fact *= k;
  double acc = 0.0;
  std::vector<int> up(p, 0), down(p, 0);
  const int total = static_cast<int>(std::pow(n, p));
  for (int a = 0; a < total; ++a) {
    for (int k = 0, r = a; k < p; ++k, r /= n) up[k] = r % n;
    std::vector<int> eps_idx = up;
    eps_idx.insert(eps_idx.end(), out_idx.begin(), out_idx.end());
    const int eps = test::permutation_sign(eps_idx);
    if (eps == 0) continue;
    // raise every index of w with the inverse metric
    double raised = 0.0;
    for (int b = 0; b < total; ++b) {
      double prod = 1.0;
      for (int k = 0, r = b; k < p; ++k, r /= n) {
        down[k] = r % n;
        prod *= gi(up[k], down[k]);
      }
      if (prod != 0.0) raised += prod * test::antisym_component(w, node, 0, down);
    }
    acc += eps * raised;
  }
  return vol * acc / fact;
}

Form<double> random_scalar_form(const Grid& g, int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Form<double> w(g, degree, ValueSpace::scalar());
  for (auto& v : w.values()) v = nd(rng);
  return w;
}

}  // namespace

TEST_SUITE("grid-calculus") {

TEST_CASE("d of a constant 0-form vanishes") {
  const Grid g = test::unit_box(3, 6);
  const auto w = test::scalar_form(g, 0, [](int, const Point&) { return 2.5; });
  CHECK(exterior_derivative(w).max_abs() == 0.0);
}

TEST_CASE("d(x1 dx0) = -dx0 ^ dx1 exactly") {
  const Grid g = test::unit_box(2, 5);
  const auto w = test::scalar_form(g, 1, [](int c, const Point& x) {
    return c == 0 ? x[1] : 0.0;
  });
  const auto dw = exterior_derivative(w);
  REQUIRE(dw.components() == 1);
  for (std::size_t node = 0; node < g.node_count(); ++node)
    CHECK(*dw.at(node, 0) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("d d vanishes to round-off on quadratic forms") {
  const Grid g = test::unit_box(3, 5);
  for (int degree : {0, 1}) {
    const auto w = test::scalar_form(g, degree, [](int c, const Point& x) {
      return 0.3 * x[0] * x[1] - 1.2 * x[2] * x[2] + c * x[0] * x[2] + 0.7 * x[1];
    });
    CHECK(exterior_derivative(exterior_derivative(w)).max_abs() < 1e-11);
  }
}

TEST_CASE("d d stays at round-off on smooth forms") {
  // Difference operators along distinct axes commute, one-sided rows included.
  for (int n : {8, 16, 32}) {
    const Grid g = test::unit_box(3, n);
    for (int degree : {0, 1}) {
      const auto w = test::scalar_form(g, degree, [](int c, const Point& x) {
        return std::sin(2.0 * x[0] + 1.0 + c) * std::cos(3.0 * x[1]) * std::exp(x[2]);
      });
      CHECK(exterior_derivative(exterior_derivative(w)).max_abs() < 1e-10);
    }
  }
}

TEST_CASE("Stokes residual converges at second order") {
  // Pure cubics integrate by parts exactly here; the sine term exposes the order.
  for (int dim : {2, 3}) {
    std::vector<double> h, err;
    for (int n : {8, 16, 32}) {
      const Grid g = test::unit_box(dim, n);
      const auto w = test::scalar_form(g, dim - 1, [](int c, const Point& x) {
        return std::pow(x[0], 3) - 2.0 * c * x[1] * x[1] * x[0] + x[1] * x[1] * x[1] +
               0.5 * c * x[2] * x[0] + std::sin(3.0 * x[0] * x[1] + c);
      });
      const double bulk = integrate_scalar(exterior_derivative(w));
      const double bdry = integrate_boundary_scalar(w);
      h.push_back(1.0 / n);
      err.push_back(std::abs(bulk - bdry));
    }
    CAPTURE(dim);
    CHECK(test::slope(h, err) > 1.8);
  }
}

TEST_CASE("wedge with zero is zero") {
  const Grid g = test::unit_box(3, 3);
  const auto a = random_scalar_form(g, 1, 1);
  const Form<double> zero(g, 1, ValueSpace::scalar());
  CHECK(wedge(a, zero, Pairing::scalar).max_abs() == 0.0);
}

TEST_CASE("trace wedge of algebra 1-forms against index summation") {
  const Grid g = test::unit_box(3, 2);
  const GroupTag su2 = GroupTag::su(2);
  std::mt19937_64 rng(5);
  Form<cplx> a(g, 1, ValueSpace::algebra(su2)), b(g, 1, ValueSpace::algebra(su2));
  for (std::size_t node = 0; node < g.node_count(); ++node)
    for (int c = 0; c < 3; ++c) {
      a.matrix(node, c) = random_algebra(su2, rng, 1.0).matrix;
      b.matrix(node, c) = random_algebra(su2, rng, 1.0).matrix;
    }
  const auto ab = wedge(a, b, Pairing::trace);
  const auto ba = wedge(b, a, Pairing::trace);
  double worst = 0.0, graded = 0.0;
  for (std::size_t node = 0; node < g.node_count(); ++node)
    for (int mu = 0; mu < 3; ++mu)
      for (int nu = mu + 1; nu < 3; ++nu) {
        const cplx oracle = (a.matrix(node, mu) * b.matrix(node, nu)).trace() -
                            (a.matrix(node, nu) * b.matrix(node, mu)).trace();
        const int comp = ab.component_of((1u << mu) | (1u << nu));
        worst = std::max(worst, std::abs(*ab.at(node, comp) - oracle));
        graded = std::max(graded, std::abs(*ab.at(node, comp) + *ba.at(node, comp)));
      }
  CHECK(worst < 1e-13);
  CHECK(graded < 1e-13);
}

TEST_CASE("bullet wedge of constant 2-forms against an explicit epsilon loop") {
  const Grid g = test::unit_box(4, 2);
  const GroupTag so13 = GroupTag::so13();
  std::mt19937_64 rng(9);
  Form<double> a(g, 2, ValueSpace::algebra(so13)), b(g, 2, ValueSpace::algebra(so13));
  for (int c = 0; c < 6; ++c) {
    const Eigen::Matrix4d ma = random_algebra(so13, rng, 1.0).matrix.real();
    const Eigen::Matrix4d mb = random_algebra(so13, rng, 1.0).matrix.real();
    for (std::size_t node = 0; node < g.node_count(); ++node) {
      a.matrix(node, c) = ma;
      b.matrix(node, c) = mb;
    }
  }
  const auto out = wedge(a, b, Pairing::bullet);
  const Eigen::Matrix4d eta = minkowski();
  // (a ^ b)_{0123} = 1/4 sum eps^{m0 m1 m2 m3} eps_{ijkl} (a_{m0 m1} eta)^{ij} (b_{m2 m3} eta)^{kl}
  double oracle = 0.0;
  for (int m0 = 0; m0 < 4; ++m0)
    for (int m1 = 0; m1 < 4; ++m1)
      for (int m2 = 0; m2 < 4; ++m2)
        for (int m3 = 0; m3 < 4; ++m3) {
          const int s = test::permutation_sign({m0, m1, m2, m3});
          if (s == 0) continue;
          const Eigen::Matrix4d x = test::permutation_sign({m0, m1}) *
                                    a.matrix(0, a.component_of((1u << m0) | (1u << m1)));
          const Eigen::Matrix4d y = test::permutation_sign({m2, m3}) *
                                    b.matrix(0, b.component_of((1u << m2) | (1u << m3)));
          const Eigen::Matrix4d xu = x * eta, yu = y * eta;
          double inner = 0.0;
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
              for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                  inner += test::permutation_sign({i, j, k, l}) * xu(i, j) * yu(k, l);
          oracle += s * inner;
        }
  // The ordered loop visits each (I, J) component pair 2! 2! times.
  oracle /= 4.0;
  CHECK(*out.at(0, 0) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("hodge: Euclidean 2D dx0 -> dx1") {
  const Grid g = test::unit_box(2, 3);
  const Region r = Region::flat(g, Signature::euclidean(2));
  const auto w = test::scalar_form(g, 1, [](int c, const Point&) { return c == 0 ? 1.0 : 0.0; });
  const auto s = hodge(w, r);
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    CHECK(*s.at(node, 0) == 0.0);
    CHECK(*s.at(node, 1) == 1.0);
  }
}

TEST_CASE("hodge: 4D Lorentzian dx0^dx1 against a single epsilon term") {
  const Grid g = test::unit_box(4, 2);
  const Region r = Region::flat(g, Signature::lorentzian(4));
  Form<double> w(g, 2, ValueSpace::scalar());
  *w.at(0, w.component_of(0b0011)) = 1.0;
  const auto s = hodge(w, r);
  // sqrt|g| g^00 g^11 eps_0123 = 1 * (+1)(-1) * 1
  CHECK(*s.at(0, s.component_of(0b1100)) == -1.0);
  double others = 0.0;
  for (int c = 0; c < 6; ++c)
    if (s.mask(c) != 0b1100) others += std::abs(*s.at(0, c));
  CHECK(others == 0.0);
}

TEST_CASE("hodge matches brute force and squares to the signature sign") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  for (int n : {2, 3, 4}) {
    const Grid g = test::unit_box(n, 2);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<double> metric(n * n, 0.0);
      int det_sign = 1;
      for (int a = 0; a < n; ++a) {
        const double sgn = (a + trial) % 3 == 0 ? -1.0 : 1.0;
        metric[a * n + a] = sgn * mag(rng);
        det_sign *= sgn < 0 ? -1 : 1;
      }
      Signature sig = Signature::euclidean(n);
      for (int a = 0; a < n; ++a) sig.signs[a] = metric[a * n + a] < 0 ? -1 : 1;
      const Region r = Region::with_metric(g, sig, metric);
      for (int p = 0; p <= n; ++p) {
        const auto w = random_scalar_form(g, p, 100 + 10 * n + p);
        const auto s = hodge(w, r);
        double worst = 0.0;
        for (int c = 0; c < s.components(); ++c)
          worst = std::max(worst,
                           std::abs(*s.at(0, c) - brute_hodge(w, r.metric_at(0), 0,
                                                               mask_axes(s.mask(c)))));
        CHECK(worst < 1e-12);
        const double sign = ((p * (n - p)) % 2 ? -1.0 : 1.0) * det_sign;
        const auto ss = hodge(s, r);
        Form<double> expect = w;
        expect *= sign;
        CHECK(test::max_diff(ss, expect) < 1e-12);
      }
    }
  }
}

TEST_CASE("integrate: zero, constants and linearity") {
  const Grid g = Grid::box(std::vector<double>{0.0, -1.0, 2.0},
                           std::vector<double>{0.5, 1.0, 2.25}, std::vector<int>{3, 4, 5});
  const Form<double> zero(g, 3, ValueSpace::scalar());
  CHECK(integrate_scalar(zero) == 0.0);
  const auto c = test::scalar_form(g, 3, [](int, const Point&) { return 1.7; });
  CHECK(integrate_scalar(c) == doctest::Approx(1.7 * 0.5 * 2.0 * 0.25).epsilon(1e-14));
  const auto a = random_scalar_form(g, 3, 3), b = random_scalar_form(g, 3, 4);
  Form<double> comb = a;
  comb *= 2.0;
  comb.add_scaled(-0.5, b);
  CHECK(integrate_scalar(comb) ==
        doctest::Approx(2.0 * integrate_scalar(a) - 0.5 * integrate_scalar(b)).epsilon(1e-13));
}

TEST_CASE("integrate: quadratic integrand converges at second order") {
  std::vector<double> h, err;
  for (int n : {8, 16, 32}) {
    const Grid g = test::unit_box(2, n);
    const auto w = test::scalar_form(g, 2, [](int, const Point& x) {
      return x[0] * x[0] + 3.0 * x[0] * x[1] + x[1] * x[1];
    });
    h.push_back(1.0 / n);
    err.push_back(std::abs(integrate_scalar(w) - (1.0 / 3.0 + 0.75 + 1.0 / 3.0)));
  }
  CHECK(err.back() < 1e-3);
  CHECK(test::slope(h, err) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("restrict_to_slice drops normal components") {
  const Grid g = test::unit_box(3, 4);
  const auto w = test::scalar_form(g, 2, [](int c, const Point& x) {
    return (c + 1) * (x[0] + 2.0 * x[1] - x[2]);
  });
  const int index = 2;
  const auto s = restrict_to_slice(w, Slice{0, index});
  CHECK(s.degree() == 2);
  REQUIRE(s.components() == 1);
  const Grid& sg = s.grid();
  CHECK(sg.dim == 2);
  const int c12 = w.component_of(0b110);
  for (std::size_t node = 0; node < sg.node_count(); ++node) {
    const auto i = sg.index_of(node);
    const std::size_t full = g.node_of({index, i[0], i[1], 0});
    CHECK(*s.at(node, 0) == *w.at(full, c12));
  }
}

TEST_CASE("restriction of a 1-form in 2D and the endpoint boundary integral") {
  const Grid g = test::unit_box(2, 4, 0.0, 2.0);
  const auto w = test::scalar_form(g, 1, [](int c, const Point& x) {
    return c == 1 ? 3.0 * x[1] + x[0] : 7.0;
  });
  const auto line = restrict_to_slice(w, Slice{0, 1});
  REQUIRE(line.components() == 1);
  for (std::size_t node = 0; node < line.nodes(); ++node)
    CHECK(*line.at(node, 0) == doctest::Approx(3.0 * line.grid().coord(0, static_cast<int>(node)) + 0.5));
  const auto f = test::scalar_form(line.grid(), 0, [](int, const Point& x) { return 3.0 * x[0] + 0.5; });
  // f(2) - f(0)
  CHECK(integrate_boundary_scalar(f) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(integrate_boundary_scalar(f, FaceSet::only(0, true)) == doctest::Approx(6.5));
}

TEST_CASE("pairwise sums are reproducible") {
  std::vector<double> v(1000);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  for (auto& x : v) x = nd(rng);
  const double a = pairwise_sum<double>(v);
  const double b = pairwise_sum<double>(v);
  CHECK(a == b);
}

TEST_CASE("degree overflow is rejected") {
  const Grid g = test::unit_box(2, 2);
  const auto a = random_scalar_form(g, 2, 1);
  const auto b = random_scalar_form(g, 1, 2);
  CHECK_THROWS_AS(wedge(a, b, Pairing::scalar), DegreeOverflow);
  CHECK_THROWS_AS((Form<double>(g, 3, ValueSpace::scalar())), DegreeOverflow);
}

}
