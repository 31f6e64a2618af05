// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "cps/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "cps/calculus.hpp"

namespace cps {

namespace {

/// sum_m a_m sin(k_m . x + p_m) with |k_m| of order 2 pi / box size.
class SmoothFunction {
 public:
  SmoothFunction(const Grid& grid, int modes, double amplitude,
                 std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int m = 0; m < modes; ++m) {
      Mode mode;
      for (int a = 0; a < grid.dim; ++a) {
        const double length = grid.upper[a] - grid.lower[a];
        mode.k[a] = std::numbers::pi * u(rng) / length;
      }
      mode.phase = std::numbers::pi * u(rng);
      mode.amp = amplitude * u(rng) / modes;
      modes_.push_back(mode);
    }
  }

  double operator()(const std::array<double, max_dim>& x) const {
    double s = 0.0;
    for (const auto& m : modes_) {
      double arg = m.phase;
      for (int a = 0; a < max_dim; ++a) arg += m.k[a] * x[a];
      s += m.amp * std::sin(arg);
    }
    return s;
  }

 private:
  struct Mode {
    std::array<double, max_dim> k{};
    double phase = 0.0;
    double amp = 0.0;
  };
  std::vector<Mode> modes_;
};

std::array<double, max_dim> coords(const Grid& grid, std::size_t node) {
  std::array<double, max_dim> x{};
  const auto idx = grid.index_of(node);
  for (int a = 0; a < grid.dim; ++a) x[a] = grid.coord(a, idx[a]);
  return x;
}

// Quadrature-weighted mean of every block entry of a 0-form component.
DenseMatrix<cplx> average(const Form<cplx>& w, int comp) {
  const Grid& g = w.grid();
  DenseMatrix<cplx> sum = DenseMatrix<cplx>::Zero(w.space().rows, w.space().cols);
  double weight = 0.0;
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    const double q = g.quadrature_weight(node);
    sum += q * w.matrix(node, comp);
    weight += q;
  }
  return sum / weight;
}

}  // namespace

Form<cplx> random_algebra_form(const Grid& grid, GroupTag group, int degree,
                               const SmoothSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  const auto basis = algebra_basis(group);
  Form<cplx> out(grid, degree, ValueSpace::algebra(group));
  for (int c = 0; c < out.components(); ++c)
    for (const auto& b : basis) {
      const SmoothFunction f(grid, spec.modes, spec.amplitude, rng);
      for (std::size_t node = 0; node < grid.node_count(); ++node)
        out.matrix(node, c) += f(coords(grid, node)) * b;
    }
  return out;
}

Form<cplx> random_matter(const Grid& grid, GroupTag group, RepTag rep,
                         const SmoothSpec& spec, double offset) {
  std::mt19937_64 rng(spec.seed);
  Form<cplx> out(grid, 0, ValueSpace::rep_vector(group, rep));
  for (int e = 0; e < out.block(); ++e) {
    const SmoothFunction re(grid, spec.modes, spec.amplitude, rng);
    const SmoothFunction im(grid, spec.modes, spec.amplitude, rng);
    for (std::size_t node = 0; node < grid.node_count(); ++node) {
      const auto x = coords(grid, node);
      out.at(node, 0)[e] = cplx(offset + re(x), im(x));
    }
  }
  return out;
}

Form<cplx> random_group_field(const Grid& grid, GroupTag group,
                              const SmoothSpec& spec) {
  return exp_field(random_algebra_form(grid, group, 0, spec));
}

Form<cplx> random_constant_group(const Grid& grid, GroupTag group,
                                 std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  const AlgebraValue x = random_algebra(group, rng, scale);
  return constant_field<cplx>(grid, ValueSpace::group_valued(group),
                              matrix_exp(x.matrix));
}

Form<cplx> constant_algebra(const Grid& grid, GroupTag group,
                            const std::vector<double>& coefficients) {
  const auto basis = algebra_basis(group);
  CMatrix m = CMatrix::Zero(group.n, group.n);
  for (std::size_t a = 0; a < basis.size() && a < coefficients.size(); ++a)
    m += coefficients[a] * basis[a];
  return constant_field<cplx>(grid, ValueSpace::algebra(group), m);
}

FieldPoint<cplx> random_ym_point(const Grid& grid, GroupTag group, RepTag rep,
                                 const SmoothSpec& spec, double offset) {
  FieldPoint<cplx> phi;
  phi.A = random_algebra_form(grid, group, 1, spec);
  if (rep != RepTag::none) {
    SmoothSpec m = spec;
    m.seed = spec.seed * 7919 + 17;
    phi.matter = random_matter(grid, group, rep, m, offset);
  }
  return phi;
}

FieldTangent<cplx> random_ym_tangent(const FieldPoint<cplx>& phi,
                                     const SmoothSpec& spec) {
  FieldTangent<cplx> x;
  x.A = random_algebra_form(phi.grid(), phi.group(), 1, spec);
  if (phi.matter) {
    SmoothSpec m = spec;
    m.seed = spec.seed * 104729 + 3;
    x.matter = random_matter(phi.grid(), phi.group(), phi.matter->space().rep,
                             m, 0.0);
  }
  return x;
}

FieldPoint<cplx> bessel_onshell(const Grid& grid, double k, double amplitude) {
  if (grid.dim != 3) throw DegreeMismatch("the Bessel scenario lives in 2+1");
  const GroupTag u1 = GroupTag::u1();
  FieldPoint<cplx> phi;
  phi.A = Form<cplx>(grid, 1, ValueSpace::algebra(u1));
  phi.matter = Form<cplx>(grid, 0, ValueSpace::rep_vector(u1, RepTag::fundamental));
  for (std::size_t node = 0; node < grid.node_count(); ++node) {
    const auto x = coords(grid, node);
    const double r = std::hypot(x[1], x[2]);
    *phi.A.at(node, 0) = cplx(0.0, amplitude * std::cyl_bessel_i(0.0, k * r));
    *phi.matter->at(node, 0) = k;
  }
  return phi;
}

double coulomb_potential_2d(double r, double charge, double sigma) {
  const double u = r * r / (2.0 * sigma * sigma);
  double bracket;  // ln r^2 + E1(u)
  if (u < 1e-3) {
    bracket = -std::numbers::egamma + std::log(2.0 * sigma * sigma) + u -
              u * u / 4.0 + u * u * u / 18.0;
  } else {
    bracket = std::log(r * r) - std::expint(-u);
  }
  return -charge / (4.0 * std::numbers::pi) * bracket;
}

FieldPoint<cplx> smoothed_coulomb(const Grid& grid, double charge,
                                  double sigma) {
  if (grid.dim != 3) throw DegreeMismatch("the Coulomb scenario lives in 2+1");
  FieldPoint<cplx> phi;
  phi.A = Form<cplx>(grid, 1, ValueSpace::algebra(GroupTag::u1()));
  for (std::size_t node = 0; node < grid.node_count(); ++node) {
    const auto x = coords(grid, node);
    *phi.A.at(node, 0) =
        cplx(0.0, coulomb_potential_2d(std::hypot(x[1], x[2]), charge, sigma));
  }
  return phi;
}

FieldDependentMap<cplx> matter_moment_parameter(double scale) {
  return [scale](const FieldPoint<cplx>& phi) {
    if (!phi.matter) throw PairingMismatch("matter_moment needs matter");
    const DenseMatrix<cplx> m = average(*phi.matter, 0);
    const int n = phi.group().n;
    DenseMatrix<cplx> h = m * m.adjoint();
    if (n > 1) h -= (h.trace() / static_cast<double>(n)) *
                    DenseMatrix<cplx>::Identity(n, n);
    return constant_field<cplx>(phi.grid(), ValueSpace::algebra(phi.group()),
                                cplx(0.0, scale) * h);
  };
}

FieldDependentMap<cplx> matter_density_parameter(double scale) {
  return [scale](const FieldPoint<cplx>& phi) {
    if (!phi.matter) throw PairingMismatch("matter_density needs matter");
    const int n = phi.group().n;
    Form<cplx> out(phi.grid(), 0, ValueSpace::algebra(phi.group()));
    for (std::size_t node = 0; node < out.nodes(); ++node) {
      const Eigen::Map<const CVector> m(phi.matter->at(node, 0), n);
      DenseMatrix<cplx> h = m * m.adjoint();
      if (n > 1) h -= (h.trace() / static_cast<double>(n)) *
                      DenseMatrix<cplx>::Identity(n, n);
      out.matrix(node, 0) = cplx(0.0, scale) * h;
    }
    return out;
  };
}

FieldDependentMap<cplx> potential_average_parameter(int axis_p, int axis_q,
                                                    double scale) {
  return [=](const FieldPoint<cplx>& phi) {
    const DenseMatrix<cplx> p = average(phi.A, phi.A.component_of(1u << axis_p));
    const DenseMatrix<cplx> q = average(phi.A, phi.A.component_of(1u << axis_q));
    return constant_field<cplx>(phi.grid(), ValueSpace::algebra(phi.group()),
                                scale * (p + p * q - q * p));
  };
}

FieldDependentMap<cplx> offset_parameter(FieldDependentMap<cplx> base,
                                         Form<cplx> constant) {
  return [base = std::move(base), c = std::move(constant)](
             const FieldPoint<cplx>& phi) { return base(phi) + c; };
}

FieldDependentMap<cplx> exponentiated(FieldDependentMap<cplx> chi) {
  return [chi = std::move(chi)](const FieldPoint<cplx>& phi) {
    return exp_field(chi(phi));
  };
}

FieldPoint<double> random_gravity_point(const Grid& grid,
                                        const SmoothSpec& spec, double ell,
                                        int lambda_sign) {
  if (grid.dim != 4) throw DegreeMismatch("gravity fields are four-dimensional");
  std::mt19937_64 rng(spec.seed);
  std::vector<Eigen::Matrix4d> basis;
  for (const auto& b : algebra_basis(GroupTag::so13())) basis.push_back(b.real());
  FieldPoint<double> phi;
  phi.ell = ell;
  phi.lambda_sign = lambda_sign;
  phi.A = Form<double>(grid, 1, ValueSpace::algebra(GroupTag::so13()));
  for (int c = 0; c < 4; ++c)
    for (const auto& b : basis) {
      const SmoothFunction f(grid, spec.modes, spec.amplitude, rng);
      for (std::size_t node = 0; node < grid.node_count(); ++node)
        phi.A.matrix(node, c) += f(coords(grid, node)) * b;
    }
  phi.tetrad = constant_field<double>(grid, ValueSpace::matrix(4, 4),
                                      Eigen::MatrixXd::Identity(4, 4));
  for (int e = 0; e < 16; ++e) {
    const SmoothFunction f(grid, spec.modes, 0.5 * spec.amplitude, rng);
    for (std::size_t node = 0; node < grid.node_count(); ++node)
      phi.tetrad->at(node, 0)[e] += f(coords(grid, node));
  }
  return phi;
}

FieldTangent<double> random_gravity_tangent(const FieldPoint<double>& phi,
                                            const SmoothSpec& spec) {
  SmoothSpec s = spec;
  FieldPoint<double> shape =
      random_gravity_point(phi.grid(), s, phi.ell, phi.lambda_sign);
  FieldTangent<double> x{std::move(shape.A), std::nullopt, std::move(shape.tetrad)};
  for (std::size_t node = 0; node < phi.grid().node_count(); ++node)
    x.tetrad->matrix(node, 0) -= Eigen::Matrix4d::Identity();
  return x;
}

}  // namespace cps
