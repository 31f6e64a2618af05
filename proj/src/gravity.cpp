// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <cmath>
#include <limits>

#include "cps/theories.hpp"

namespace cps {

BulletPairing::BulletPairing(const Region& region, PairingMetric kind) {
  if (region.dim() != 4) throw DegreeMismatch("bullet pairing needs dimension 4");
  if (kind == PairingMetric::minkowski) {
    lower_.push_back(minkowski());
    raise_.push_back(minkowski());
    weight_.push_back(1.0);
    return;
  }
  constant_ = region.constant_metric();
  const std::size_t count = constant_ ? 1 : region.grid().node_count();
  lower_.resize(count);
  raise_.resize(count);
  weight_.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    const Eigen::Matrix4d g = region.metric_at(k);
    lower_[k] = g;
    raise_[k] = g.inverse();
    weight_[k] = std::sqrt(std::abs(g.determinant()));
  }
}

Form<double> bullet_wedge(const Form<double>& a, const Form<double>& b,
                          const BulletPairing& pairing) {
  if (a.space().rows != 4 || a.space().cols != 4 || b.space().rows != 4 ||
      b.space().cols != 4)
    throw PairingMismatch("bullet pairing needs 4x4 values");
  Form<double> out(a.grid(), a.degree() + b.degree(), ValueSpace::scalar());
  wedge_accumulate(a, b, out,
                   [&pairing](std::size_t node, const double* x,
                              const double* y, double* o, double f) {
                     const Eigen::Map<const Eigen::Matrix4d> mx(x), my(y);
                     o[0] += f * bullet<double>(mx, my, pairing.raise(node),
                                                pairing.weight(node));
                   });
  return out;
}

Form<double> lower_right(const Form<double>& w, const BulletPairing& pairing) {
  if (w.space().cols != 4) throw PairingMismatch("lowering needs 4 columns");
  Form<double> out = zero_like(w);
  for (std::size_t node = 0; node < w.nodes(); ++node)
    for (int c = 0; c < w.components(); ++c)
      out.matrix(node, c) = w.matrix(node, c) * pairing.lower(node);
  return out;
}

namespace {

Form<double> transposed_row(const Form<double>& vec) {
  Form<double> row = vec;
  return row.retag(ValueSpace::matrix(1, vec.space().rows));
}

}  // namespace

McDowellMansouri::McDowellMansouri(Region region, double ell, int lambda_sign,
                                   PairingMetric metric)
    : region_(std::move(region)),
      ell_(ell),
      sign_(lambda_sign),
      pairing_(region_, metric) {}

void McDowellMansouri::check(const FieldPoint<double>& phi) const {
  if (region_.dim() != 4) throw DegreeMismatch("gravity needs dimension 4");
  if (!(phi.grid() == region_.grid()))
    throw GridMismatch("field lives on a different grid than the theory");
  if (phi.A.space().rows != 4 || phi.A.degree() != 1)
    throw PairingMismatch("gravity connection must be a 4x4 1-form");
  if (!phi.tetrad) throw PairingMismatch("gravity field needs a tetrad");
}

Form<double> McDowellMansouri::cartan_curvature(
    const FieldPoint<double>& phi) const {
  check(phi);
  const Form<double> e = tetrad_one_form(*phi.tetrad);
  Form<double> F = curvature(phi.A);
  F.add_scaled(-coupling(),
               lower_right(wedge(e, transposed_row(e), Pairing::product),
                           pairing_));
  return F;
}

Form<double> McDowellMansouri::lagrangian(const FieldPoint<double>& phi) const {
  const Form<double> F = cartan_curvature(phi);
  Form<double> L = bullet_wedge(F, F, pairing_);
  return L *= 0.5;
}

Form<double> McDowellMansouri::field_equation(
    const FieldPoint<double>& phi, const FieldTangent<double>& x) const {
  const Form<double> F = cartan_curvature(phi);
  const Form<double> e = tetrad_one_form(*phi.tetrad);
  const Form<double> e_row = transposed_row(e);
  const Form<double> T = torsion(phi.A, *phi.tetrad);
  Form<double> E = bullet_wedge(
      x.A, lower_right(wedge(T, e_row, Pairing::product), pairing_), pairing_);
  if (x.tetrad) {
    const Form<double> de = tetrad_one_form(*x.tetrad);
    E += bullet_wedge(lower_right(wedge(de, e_row, Pairing::product), pairing_),
                      F, pairing_);
  }
  return E *= -2.0 * coupling();
}

Form<double> McDowellMansouri::potential(const FieldPoint<double>& phi,
                                         const FieldTangent<double>& x) const {
  return bullet_wedge(x.A, cartan_curvature(phi), pairing_);
}

Form<double> McDowellMansouri::potential_param(const FieldPoint<double>& phi,
                                               const Form<double>& chi) const {
  return bullet_wedge(chi, cartan_curvature(phi), pairing_);
}

Form<double> McDowellMansouri::equation_param(const FieldPoint<double>& phi,
                                              const Form<double>& chi) const {
  check(phi);
  const Form<double> e = tetrad_one_form(*phi.tetrad);
  const Form<double> T = torsion(phi.A, *phi.tetrad);
  Form<double> E = bullet_wedge(
      chi,
      lower_right(wedge(T, transposed_row(e), Pairing::product), pairing_),
      pairing_);
  return E *= -2.0 * coupling();
}

McDowellMansouri mm_kernels(const Region& region, double ell, int lambda_sign) {
  return McDowellMansouri(region, ell, lambda_sign, PairingMetric::minkowski);
}

// ---------------------------------------------------------------------------

GravityData tetrad_dressing(const FieldPoint<double>& phi,
                            const Signature& signature) {
  if (!phi.tetrad) throw SingularTetrad("no tetrad supplied");
  const Form<double>& e = *phi.tetrad;
  const Grid& grid = e.grid();
  if (grid.dim != 4) throw DegreeMismatch("tetrad dressing needs dimension 4");
  const Eigen::Matrix4d eta = minkowski();
  std::vector<double> metric(16 * grid.node_count());
  for (std::size_t node = 0; node < grid.node_count(); ++node) {
    const Eigen::Matrix4d en = e.matrix(node, 0);
    if (std::abs(en.determinant()) < metric_det_floor)
      throw SingularTetrad("tetrad singular at node " + std::to_string(node));
    const Eigen::Matrix4d g = en.transpose() * eta * en;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) metric[16 * node + 4 * i + j] = g(i, j);
  }

  GravityData out;
  out.tetrad = e;
  out.A = phi.A;
  out.ell = phi.ell;
  out.lambda_sign = phi.lambda_sign;
  out.region = Region::with_metric(grid, signature, std::move(metric));

  const ValueSpace gl = ValueSpace::algebra(GroupTag::gl4());
  out.Gamma = conjugate(e, phi.A).retag(gl);
  out.Gamma += wedge(inverse_field(e), exterior_derivative(e), Pairing::product)
                   .retag(gl);
  out.riemann = curvature(out.Gamma);
  const Form<double> identity =
      constant_field<double>(grid, e.space(), Eigen::MatrixXd::Identity(4, 4));
  out.torsion = torsion(out.Gamma, identity);

  const McDowellMansouri dressed(out.region, phi.ell, phi.lambda_sign,
                                 PairingMetric::region);
  out.F_dressed = dressed.cartan_curvature({out.Gamma, std::nullopt, identity,
                                            phi.ell, phi.lambda_sign});
  const McDowellMansouri bare(out.region, phi.ell, phi.lambda_sign,
                              PairingMetric::minkowski);
  out.F_conjugated = conjugate(e, bare.cartan_curvature(phi));
  return out;
}

Form<double> levi_civita_connection(const Form<double>& tetrad) {
  const Grid& grid = tetrad.grid();
  if (grid.dim != 4) throw DegreeMismatch("Levi-Civita solve needs dimension 4");
  const Form<double> de = exterior_derivative(tetrad_one_form(tetrad));
  const auto basis = algebra_basis(GroupTag::so13());
  std::vector<Eigen::Matrix4d> B;
  for (const auto& b : basis) B.push_back(b.real());
  const auto& pairs = component_masks(4, 2);

  Form<double> A(grid, 1, ValueSpace::algebra(GroupTag::so13()));
  Eigen::Matrix<double, 24, 24> M;
  Eigen::Matrix<double, 24, 1> rhs;
  for (std::size_t node = 0; node < grid.node_count(); ++node) {
    const Eigen::Matrix4d e = tetrad.matrix(node, 0);
    if (std::abs(e.determinant()) < metric_det_floor)
      throw SingularTetrad("tetrad singular at node " + std::to_string(node));
    M.setZero();
    // Row (pair, a): de^a_{mu nu} + (w_mu e_nu - w_nu e_mu)^a = 0.
    for (int p = 0; p < 6; ++p) {
      const auto axes = mask_axes(pairs[p]);
      const int mu = axes[0], nu = axes[1];
      for (int a = 0; a < 4; ++a) {
        const int row = 4 * p + a;
        rhs(row) = -de.at(node, p)[a];
        for (int k = 0; k < 6; ++k) {
          M(row, 6 * mu + k) += (B[k] * e.col(nu))(a);
          M(row, 6 * nu + k) -= (B[k] * e.col(mu))(a);
        }
      }
    }
    const Eigen::Matrix<double, 24, 1> x = M.fullPivLu().solve(rhs);
    for (int mu = 0; mu < 4; ++mu) {
      Eigen::Matrix4d w = Eigen::Matrix4d::Zero();
      for (int k = 0; k < 6; ++k) w += x(6 * mu + k) * B[k];
      A.matrix(node, mu) = w;
    }
  }
  return A;
}

double static_lapse(const std::string& name, double r, double mass,
                    double ell) {
  if (name == "deSitter") return 1.0 - r * r / (ell * ell);
  if (name == "antiDeSitter") return 1.0 + r * r / (ell * ell);
  if (name == "schwarzschild_ads")
    return 1.0 - 2.0 * mass / r + r * r / (ell * ell);
  throw ConfigError("unknown static geometry: " + name);
}

AnalyticGeometry analytic_metric(const std::string& name, const Grid& grid,
                                 double mass, double ell) {
  if (grid.dim != 4) throw BadPatch("analytic geometries are four-dimensional");
  AnalyticGeometry out;
  out.name = name;
  out.mass = mass;
  out.ell = ell;
  const ValueSpace tetrad_space = ValueSpace::matrix(4, 4);
  if (name == "flat") {
    out.ell = std::numeric_limits<double>::infinity();
    out.lambda_sign = 1;
    out.tetrad = constant_field<double>(grid, tetrad_space,
                                        Eigen::MatrixXd::Identity(4, 4));
    out.patch_notes.push_back("cartesian coordinates, cosmological term off");
    return out;
  }
  if (!(ell > 0.0)) throw BadPatch("ell must be positive");
  out.lambda_sign = (name == "deSitter") ? -1 : 1;
  const double r0 = grid.lower[1], r1 = grid.upper[1];
  const double th0 = grid.lower[2], th1 = grid.upper[2];
  if (r0 <= 0.0) throw BadPatch("patch reaches r <= 0");
  if (th0 <= 0.0 || th1 >= M_PI)
    throw BadPatch("patch touches the polar axis");
  for (int i = 0; i <= grid.cells[1]; ++i) {
    const double f = static_lapse(name, grid.coord(1, i), mass, ell);
    if (f <= 1e-8)
      throw BadPatch("patch reaches a horizon near r = " +
                     std::to_string(grid.coord(1, i)));
  }
  out.patch_notes.push_back("static coordinates (t, r, theta, phi), r in [" +
                            std::to_string(r0) + ", " + std::to_string(r1) +
                            "]");
  out.tetrad = sample_form<double>(
      grid, 0, tetrad_space,
      [&](std::size_t, const std::array<double, max_dim>& x, int, double* b) {
        const double f = static_lapse(name, x[1], mass, ell);
        const double sf = std::sqrt(f);
        b[0] = sf;
        b[5] = 1.0 / sf;
        b[10] = x[1];
        b[15] = x[1] * std::sin(x[2]);
      });
  return out;
}

Form<double> killing_gradient(const Form<double>& Gamma,
                              const Form<double>& zeta) {
  const int n = zeta.grid().dim;
  if (zeta.degree() != 0 || zeta.space().rows != n || zeta.space().cols != 1)
    throw PairingMismatch("zeta must be an n-vector 0-form");
  const Form<double> dz = exterior_derivative(zeta);
  Form<double> kappa(zeta.grid(), 0, ValueSpace::matrix(n, n));
  for (std::size_t node = 0; node < zeta.nodes(); ++node) {
    const Eigen::Map<const Eigen::VectorXd> z(zeta.at(node, 0), n);
    for (int nu = 0; nu < n; ++nu) {
      const Eigen::Map<const Eigen::VectorXd> dzn(dz.at(node, nu), n);
      kappa.matrix(node, 0).col(nu) = dzn + Gamma.matrix(node, nu) * z;
    }
  }
  return kappa;
}

double killing_residual(const Region& region, const Form<double>& zeta) {
  const Grid& grid = region.grid();
  const int n = grid.dim;
  Form<double> g(grid, 0, ValueSpace::matrix(n, n));
  for (std::size_t node = 0; node < grid.node_count(); ++node)
    g.matrix(node, 0) = region.metric_at(node);
  const Form<double> dg = exterior_derivative(g);
  const Form<double> dz = exterior_derivative(zeta);
  double worst = 0.0;
  for (std::size_t node = 0; node < grid.node_count(); ++node) {
    const Eigen::Map<const Eigen::VectorXd> z(zeta.at(node, 0), n);
    const Eigen::MatrixXd gm = g.matrix(node, 0);
    Eigen::MatrixXd dzm(n, n);  // dzm(rho, mu) = d_mu zeta^rho
    for (int mu = 0; mu < n; ++mu)
      dzm.col(mu) = Eigen::Map<const Eigen::VectorXd>(dz.at(node, mu), n);
    Eigen::MatrixXd lie = gm * dzm + dzm.transpose() * gm;
    for (int rho = 0; rho < n; ++rho) lie += z(rho) * dg.matrix(node, rho);
    worst = std::max(worst, lie.cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace cps
