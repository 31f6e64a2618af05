// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "cps/charges.hpp"

#include <cmath>
#include <type_traits>

namespace cps {

namespace {

const Slice& require_slice(const Region& region) {
  if (!region.slice()) throw NoSlice("charges need a region with a slice");
  return *region.slice();
}

template <class T>
Form<T> magnitude(const Form<T>& w) {
  Form<T> out = w;
  for (auto& v : out.values()) v = T{std::sqrt(abs2_of(v))};
  return out;
}

template <class T>
double faces_abs_sum(const Form<T>& w) {
  double s = 0.0;
  for (int axis = 0; axis < w.grid().dim; ++axis)
    for (bool upper : {false, true})
      s += std::abs(
          integrate_boundary_scalar(w, FaceSet::only(axis, upper)));
  return s;
}

template <class T>
double total_integral(const Form<T>& w) {
  return real_of(integrate_scalar(w));
}

}  // namespace

template <class T>
double slice_integral(const Form<T>& w, const Region& region) {
  return real_of(integrate_scalar(restrict_to_slice(w, require_slice(region))));
}

template <class T>
double slice_boundary_integral(const Form<T>& w, const Region& region,
                               FaceSet faces) {
  return real_of(integrate_boundary_scalar(
      restrict_to_slice(w, require_slice(region)), faces));
}

template <class T>
double theta_sigma(const Theory<T>& theory, const FieldPoint<T>& phi,
                   const FieldTangent<T>& x) {
  return slice_integral(theory.potential(phi, x), theory.region());
}

template <class T>
ChargeReport noether_charge(const Theory<T>& theory, const Form<T>& chi,
                            const FieldPoint<T>& phi, FaceSet faces) {
  const Region& region = theory.region();
  ChargeReport out;
  out.boundary_part = slice_boundary_integral(
      theory.potential_param(phi, chi), region, faces);
  const Form<T> bulk = theory.equation_param(phi, chi);
  out.bulk_part = slice_integral(bulk, region);
  out.onshell_residual = slice_integral(magnitude(bulk), region);
  out.value = out.boundary_part - out.bulk_part;
  return out;
}

template <class T>
ChargeReport noether_charge(const Theory<T>& theory,
                            const FieldDependentMap<T>& chi,
                            const FieldPoint<T>& phi, FaceSet faces) {
  return noether_charge(theory, chi(phi), phi, faces);
}

template <class T>
VariationalIdentity variational_identity(const Theory<T>& theory,
                                         const FieldPoint<T>& phi,
                                         const FieldTangent<T>& x,
                                         FDOptions opt) {
  VariationalIdentity out;
  const auto dL = fs_directional(
      [&](const FieldPoint<T>& p) { return total_integral(theory.lagrangian(p)); },
      phi, x, opt);
  out.dL = dL.value;
  out.fd_error = dL.error;
  out.bulk = total_integral(theory.field_equation(phi, x));
  const Form<T> theta = theory.potential(phi, x);
  out.boundary = real_of(integrate_boundary_scalar(theta));
  out.theta_norm = faces_abs_sum(theta);
  out.residual = std::abs(out.dL - out.bulk - out.boundary);
  return out;
}

template <class T>
CurrentIdentity current_identity(const Theory<T>& theory,
                                 const FieldPoint<T>& phi, const Form<T>& chi) {
  const Form<T> lhs = theory.potential(phi, vertical_vector(chi, phi));
  Form<T> rhs = exterior_derivative(theory.potential_param(phi, chi));
  rhs -= theory.equation_param(phi, chi);
  return {fd_norm(lhs - rhs), fd_norm(lhs)};
}

template <class T>
PresymplecticReport presymplectic_2form(const Theory<T>& theory,
                                        const FieldPoint<T>& phi,
                                        const FieldTangent<T>& x,
                                        const FieldTangent<T>& y,
                                        FDOptions opt) {
  const VariationalOneForm<T> theta = [&](const FieldPoint<T>& p,
                                          const FieldTangent<T>& z) {
    return theta_sigma(theory, p, z);
  };
  const auto k = fs_two_form_kozsul(theta, phi, x, y, opt);
  PresymplecticReport out;
  out.kozsul = k.value;
  out.fd_error = k.error;
  if constexpr (std::is_same_v<T, cplx>) {
    if (const auto* ym = dynamic_cast<const YangMillsScalar*>(&theory)) {
      out.has_direct = true;
      out.direct =
          slice_integral(ym->presymplectic_density(phi, x, y), theory.region());
      out.discrepancy = std::abs(out.direct - out.kozsul);
    }
  }
  return out;
}

template <class T>
BracketReport poisson_bracket(const Theory<T>& theory,
                              const FieldDependentMap<T>& a,
                              const FieldDependentMap<T>& b,
                              const FieldPoint<T>& phi, FDOptions opt) {
  const Form<T> av = a(phi);
  const Form<T> bv = b(phi);
  const auto theta = presymplectic_2form(theory, phi, vertical_vector(av, phi),
                                         vertical_vector(bv, phi), opt);
  const auto ext = extended_bracket(a, b, phi, opt);
  BracketReport out;
  out.bracket = theta.kozsul;
  out.fd_error = theta.fd_error + ext.error;
  out.charge_pointwise =
      noether_charge(theory, algebra_commutator(av, bv), phi).value;
  out.charge_extended = noether_charge(theory, ext.value, phi).value;
  out.residual = std::abs(out.bracket - out.charge_pointwise);
  out.residual_extended = std::abs(out.bracket - out.charge_extended);
  return out;
}

template <class T>
Form<T> maurer_cartan_right(const FieldDependentMap<T>& gamma,
                            const FieldPoint<T>& phi, const FieldTangent<T>& x,
                            FDOptions opt) {
  const Form<T> g = gamma(phi);
  const Form<T> dg = fs_directional(gamma, phi, x, opt).value;
  const Form<T> ginv = inverse_field(g);
  Form<T> out(g.grid(), 0, phi.A.space());
  for (std::size_t node = 0; node < g.nodes(); ++node)
    out.matrix(node, 0) = dg.matrix(node, 0) * ginv.matrix(node, 0);
  return out;
}

template <class T>
TransformReport gauge_transformed_presymplectic(
    const Theory<T>& theory, const FieldDependentMap<T>& gamma,
    const FieldPoint<T>& phi, const FieldTangent<T>& x,
    const FieldTangent<T>& y, FDOptions opt) {
  // Pushforward of z at p by p -> p^{gamma(p)}, and the image point.
  auto pushed = [&](const FieldPoint<T>& p, const FieldTangent<T>& z) {
    const FieldPoint<T> ref = gauge_transform(p, gamma(p));
    auto image = fs_directional(
        [&](const FieldPoint<T>& q) {
          return difference(gauge_transform(q, gamma(q)), ref);
        },
        p, z, opt);
    return std::pair{ref, std::move(image.value)};
  };
  const VariationalOneForm<T> theta_pull = [&](const FieldPoint<T>& p,
                                               const FieldTangent<T>& z) {
    const auto [ref, v] = pushed(p, z);
    return theta_sigma(theory, ref, v);
  };
  const VariationalOneForm<T> theta_formula = [&](const FieldPoint<T>& p,
                                                  const FieldTangent<T>& z) {
    return theta_sigma(theory, p, z) +
           noether_charge(theory, maurer_cartan_right(gamma, p, z, opt), p)
               .value;
  };

  TransformReport out;
  out.theta_pullback = theta_pull(phi, x);
  out.theta_formula = theta_formula(phi, x);
  const auto big_pull = fs_two_form_kozsul(theta_pull, phi, x, y, opt);
  const auto big_formula = fs_two_form_kozsul(theta_formula, phi, x, y, opt);
  out.Theta_pullback = big_pull.value;
  out.Theta_formula = big_formula.value;
  out.fd_error = big_pull.error + big_formula.error;

  const auto [ref, v] = pushed(phi, x);
  out.E_pullback = total_integral(theory.field_equation(ref, v));
  out.E_formula =
      total_integral(theory.field_equation(phi, x)) +
      real_of(integrate_boundary_scalar(theory.equation_param(
          phi, maurer_cartan_right(gamma, phi, x, opt))));
  return out;
}

AbbottDeserReport ab_charge(const YangMillsScalar& theory,
                            const Form<cplx>& chi,
                            const BackgroundSplit<cplx>& split,
                            double killing_tolerance, FaceSet faces) {
  const Region& region = theory.region();
  AbbottDeserReport out;
  out.charge.killing_residual = covariant_derivative(split.A0, chi).max_abs();
  if (out.charge.killing_residual > killing_tolerance)
    throw NotKilling("|D0 chi| = " + std::to_string(out.charge.killing_residual) +
                     " exceeds tolerance");
  out.charge.boundary_part = slice_boundary_integral(
      wedge(chi, hodge(split.f, region), Pairing::trace), region, faces);
  out.charge.value = out.charge.boundary_part;
  out.bulk_current =
      slice_integral(wedge(chi, split.j, Pairing::trace), region);
  out.stokes_discrepancy = std::abs(out.charge.value - out.bulk_current);
  out.background_part = slice_boundary_integral(
      wedge(chi, hodge(split.F0, region), Pairing::trace), region, faces);
  out.charge.notes = split.warnings;
  out.charge.notes.push_back(
      "conservation is tested only as smallness of dJ in the interior");
  return out;
}

KomarSurface parse_komar_surface(const std::string& text) {
  if (text == "outer") return KomarSurface::outer;
  if (text == "inner") return KomarSurface::inner;
  if (text == "shell") return KomarSurface::shell;
  if (text == "full") return KomarSurface::full;
  throw ConfigError("unknown Komar surface '" + text + "'");
}

FaceSet komar_faces(KomarSurface surface) {
  switch (surface) {
    case KomarSurface::outer:
      return FaceSet::only(0, true);
    case KomarSurface::inner:
      return FaceSet::only(0, false);
    case KomarSurface::shell:
      return {FaceSet::only(0, true).bits | FaceSet::only(0, false).bits};
    case KomarSurface::full:
      break;
  }
  return FaceSet::all();
}

Form<double> time_translation(const Grid& grid) {
  Form<double> zeta(grid, 0, ValueSpace::matrix(grid.dim, 1));
  for (std::size_t node = 0; node < grid.node_count(); ++node)
    zeta.at(node, 0)[0] = 1.0;
  return zeta;
}

ChargeReport komar_charge(const GravityData& data, const Form<double>& zeta,
                          KomarSurface surface) {
  Region region = data.region;
  if (!region.slice())
    region.set_slice({0, region.grid().cells[0] / 2});
  const Form<double> kappa = killing_gradient(data.Gamma, zeta);
  const BulletPairing pairing(region, PairingMetric::region);
  ChargeReport out;
  out.boundary_part = slice_boundary_integral(
      bullet_wedge(kappa, data.F_dressed, pairing), region,
      komar_faces(surface));
  out.value = out.boundary_part;
  out.killing_residual = killing_residual(region, zeta);
  if (out.killing_residual > 1e-6)
    out.notes.push_back("zeta is not an exact Killing vector of the grid "
                        "metric; residual " +
                        std::to_string(out.killing_residual));
  return out;
}

#define CPS_INSTANTIATE(T)                                                     \
  template double slice_integral(const Form<T>&, const Region&);               \
  template double slice_boundary_integral(const Form<T>&, const Region&,       \
                                          FaceSet);                            \
  template double theta_sigma(const Theory<T>&, const FieldPoint<T>&,          \
                              const FieldTangent<T>&);                         \
  template ChargeReport noether_charge(const Theory<T>&, const Form<T>&,       \
                                       const FieldPoint<T>&, FaceSet);         \
  template ChargeReport noether_charge(const Theory<T>&,                       \
                                       const FieldDependentMap<T>&,            \
                                       const FieldPoint<T>&, FaceSet);         \
  template VariationalIdentity variational_identity(                           \
      const Theory<T>&, const FieldPoint<T>&, const FieldTangent<T>&,          \
      FDOptions);                                                              \
  template CurrentIdentity current_identity(                                   \
      const Theory<T>&, const FieldPoint<T>&, const Form<T>&);                 \
  template PresymplecticReport presymplectic_2form(                            \
      const Theory<T>&, const FieldPoint<T>&, const FieldTangent<T>&,          \
      const FieldTangent<T>&, FDOptions);                                      \
  template BracketReport poisson_bracket(                                      \
      const Theory<T>&, const FieldDependentMap<T>&,                           \
      const FieldDependentMap<T>&, const FieldPoint<T>&, FDOptions);           \
  template Form<T> maurer_cartan_right(const FieldDependentMap<T>&,            \
                                       const FieldPoint<T>&,                   \
                                       const FieldTangent<T>&, FDOptions);     \
  template TransformReport gauge_transformed_presymplectic(                    \
      const Theory<T>&, const FieldDependentMap<T>&, const FieldPoint<T>&,     \
      const FieldTangent<T>&, const FieldTangent<T>&, FDOptions);

CPS_INSTANTIATE(double)
CPS_INSTANTIATE(cplx)

#undef CPS_INSTANTIATE

}  // namespace cps
