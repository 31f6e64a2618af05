// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <string>

#include "cps/charges.hpp"

namespace cps {

enum class DressingMethod { u1_polar, tetrad, supplied };
DressingMethod parse_dressing_method(const std::string& text);
std::string to_string(DressingMethod m);

/// A dressing field u(phi) with R*_gamma u = gamma^{-1} u.
template <class T>
struct Dressing {
  Form<T> u;
  DressingMethod method = DressingMethod::supplied;
};

/// u1_polar: u = m / |m|, needs |m| > floor everywhere. tetrad: u = e.
template <class T>
Dressing<T> extract_dressing(const FieldPoint<T>& phi, DressingMethod method,
                             double floor = 1e-8);

/// Extractor phi -> u(phi) for FD use; supplied needs a fixed field.
template <class T>
FieldDependentMap<T> dressing_extractor(DressingMethod method,
                                        double floor = 1e-8);

/// A^u = u^{-1} A u + u^{-1} du, matter^u = u^{-1} matter, e^u = u^{-1} e.
template <class T>
FieldPoint<T> dress_fields(const FieldPoint<T>& phi, const Form<T>& u);

/// theta^b(X) = theta_Sigma(X) - Q(omega(X)), and theta_Sigma(X^h).
struct BasicThetaReport {
  double theta = 0.0;
  double omega_charge = 0.0;
  double basic = 0.0;
  double basic_projected = 0.0;
};
template <class T>
BasicThetaReport basic_theta_via_connection(
    const Theory<T>& theory, const FieldSpaceConnection<T>& omega,
    const FieldPoint<T>& phi, const FieldTangent<T>& x);

/// Theta^b(X, Y) as the field-space derivative of theta^b.
template <class T>
FDResult<double> basic_Theta_via_connection(
    const Theory<T>& theory, const FieldSpaceConnection<T>& omega,
    const FieldPoint<T>& phi, const FieldTangent<T>& x,
    const FieldTangent<T>& y, FDOptions opt = {});

/// theta^u(X) = theta_Sigma(X) + Q(du u^{-1}(X)) against the pullback
/// theta(phi^u; d phi^u(X)); Theta^u likewise.
struct DressedReport {
  double theta = 0.0;
  double theta_formula = 0.0;
  double theta_direct = 0.0;
  double Theta_formula = 0.0;
  double Theta_direct = 0.0;
  double fd_error = 0.0;

  double theta_residual() const { return std::abs(theta_formula - theta_direct); }
  double Theta_residual() const { return std::abs(Theta_formula - Theta_direct); }
};
template <class T>
DressedReport dressed_presymplectic(const Theory<T>& theory,
                                    const FieldPoint<T>& phi,
                                    const FieldDependentMap<T>& extractor,
                                    const FieldTangent<T>& x,
                                    const FieldTangent<T>& y,
                                    FDOptions opt = {});

/// Shift of the dressed potential under u -> u xi(phi): the recomputed
/// value against theta^u + Q(phi^u; d xi xi^{-1}(X)).
struct ResidualTransformReport {
  double theta_dressed = 0.0;
  double theta_redressed = 0.0;
  double shift_direct = 0.0;
  double shift_formula = 0.0;
  double invariance_residual = 0.0;  // |xi(phi^gamma) - xi(phi)| probe
  double residual() const { return std::abs(shift_direct - shift_formula); }
};
template <class T>
ResidualTransformReport residual_transform(
    const Theory<T>& theory, const FieldPoint<T>& phi,
    const FieldDependentMap<T>& extractor, const FieldDependentMap<T>& xi,
    const FieldTangent<T>& x, FDOptions opt = {},
    const Form<T>* probe_gamma = nullptr);

/// Q(kappa; phi^u) with the kernels of the dressed theory.
template <class T>
ChargeReport dressed_charge(const Theory<T>& dressed_theory,
                            const Form<T>& kappa,
                            const FieldPoint<T>& dressed_phi,
                            FaceSet faces = {});

/// Dressed gravity as a theory and a point: region pairing, A = Gamma,
/// tetrad = identity. The region carries a t-slice.
struct DressedGravity {
  McDowellMansouri theory;
  FieldPoint<double> point;
};
DressedGravity dressed_gravity(const GravityData& data);

}  // namespace cps
