// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <string>
#include <vector>

#include "cps/field_space.hpp"
#include "cps/theories.hpp"

namespace cps {

/// Q = boundary_part - bulk_part.
struct ChargeReport {
  double value = 0.0;
  double boundary_part = 0.0;
  double bulk_part = 0.0;
  /// Integral of |E(chi)| over the slice.
  double onshell_residual = 0.0;
  double killing_residual = 0.0;
  std::vector<std::string> notes;
};

/// Integral over Sigma of the pullback of a degree n-1 form.
template <class T>
double slice_integral(const Form<T>& w, const Region& region);
/// Integral over the selected faces of d Sigma of a degree n-2 form.
template <class T>
double slice_boundary_integral(const Form<T>& w, const Region& region,
                               FaceSet faces = {});

template <class T>
double theta_sigma(const Theory<T>& theory, const FieldPoint<T>& phi,
                   const FieldTangent<T>& x);

template <class T>
ChargeReport noether_charge(const Theory<T>& theory, const Form<T>& chi,
                            const FieldPoint<T>& phi, FaceSet faces = {});
template <class T>
ChargeReport noether_charge(const Theory<T>& theory,
                            const FieldDependentMap<T>& chi,
                            const FieldPoint<T>& phi, FaceSet faces = {});

/// dL(X) - int E(X) - oint theta(X) over the whole region.
struct VariationalIdentity {
  double dL = 0.0;
  double bulk = 0.0;
  double boundary = 0.0;
  double residual = 0.0;
  double theta_norm = 0.0;
  double fd_error = 0.0;
};
template <class T>
VariationalIdentity variational_identity(const Theory<T>& theory,
                                         const FieldPoint<T>& phi,
                                         const FieldTangent<T>& x,
                                         FDOptions opt = {});

/// |theta(chi^v) - (d theta(chi) - E(chi))| as forms, and the scale.
struct CurrentIdentity {
  double residual = 0.0;
  double scale = 0.0;
};
template <class T>
CurrentIdentity current_identity(const Theory<T>& theory,
                                 const FieldPoint<T>& phi, const Form<T>& chi);

struct PresymplecticReport {
  double kozsul = 0.0;
  double fd_error = 0.0;
  bool has_direct = false;
  double direct = 0.0;
  double discrepancy = 0.0;
};
template <class T>
PresymplecticReport presymplectic_2form(const Theory<T>& theory,
                                        const FieldPoint<T>& phi,
                                        const FieldTangent<T>& x,
                                        const FieldTangent<T>& y,
                                        FDOptions opt = {});

/// Theta(a^v, b^v) against Q of the pointwise and of the extended bracket.
struct BracketReport {
  double bracket = 0.0;
  double charge_pointwise = 0.0;
  double charge_extended = 0.0;
  double residual = 0.0;           // vs pointwise
  double residual_extended = 0.0;  // vs extended
  double fd_error = 0.0;
};
template <class T>
BracketReport poisson_bracket(const Theory<T>& theory,
                              const FieldDependentMap<T>& a,
                              const FieldDependentMap<T>& b,
                              const FieldPoint<T>& phi, FDOptions opt = {});

/// Two evaluations of theta, Theta and the integrated E after a
/// field-dependent gauge transformation.
struct TransformReport {
  double theta_pullback = 0.0;
  double theta_formula = 0.0;
  double Theta_pullback = 0.0;
  double Theta_formula = 0.0;
  double E_pullback = 0.0;
  double E_formula = 0.0;
  double fd_error = 0.0;

  double theta_residual() const {
    return std::abs(theta_pullback - theta_formula);
  }
  double Theta_residual() const {
    return std::abs(Theta_pullback - Theta_formula);
  }
  double E_residual() const { return std::abs(E_pullback - E_formula); }
};
template <class T>
TransformReport gauge_transformed_presymplectic(
    const Theory<T>& theory, const FieldDependentMap<T>& gamma,
    const FieldPoint<T>& phi, const FieldTangent<T>& x,
    const FieldTangent<T>& y, FDOptions opt = {});

/// d gamma gamma^{-1} (X) by finite differences.
template <class T>
Form<T> maurer_cartan_right(const FieldDependentMap<T>& gamma,
                            const FieldPoint<T>& phi, const FieldTangent<T>& x,
                            FDOptions opt = {});

/// Charge of a perturbation about a background; Q = oint Tr(chi *f).
struct AbbottDeserReport {
  ChargeReport charge;
  double bulk_current = 0.0;  // int Tr(chi j)
  double stokes_discrepancy = 0.0;
  double background_part = 0.0;  // oint Tr(chi *F0)
};
AbbottDeserReport ab_charge(const YangMillsScalar& theory,
                            const Form<cplx>& chi,
                            const BackgroundSplit<cplx>& split,
                            double killing_tolerance, FaceSet faces = {});

enum class KomarSurface { outer, inner, shell, full };
KomarSurface parse_komar_surface(const std::string& text);

/// Generalised Komar charge oint sqrt|g| kappa . F on the boundary of the
/// time slice, kappa = nabla zeta. Coordinates (t, r, theta, phi).
ChargeReport komar_charge(const GravityData& data, const Form<double>& zeta,
                          KomarSurface surface = KomarSurface::outer);

/// The static Killing vector d_t as a 4 x 1 0-form.
Form<double> time_translation(const Grid& grid);

/// Faces of the t = const slice (axes renumbered without t) for a surface.
FaceSet komar_faces(KomarSurface surface);

}  // namespace cps
