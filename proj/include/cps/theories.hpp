// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cps/calculus.hpp"
#include "cps/gauge.hpp"

namespace cps {

/// Lagrangian, field-equation and presymplectic-potential kernels of a
/// gauge theory on a region. All outputs are scalar forms.
template <class T>
class Theory {
 public:
  virtual ~Theory() = default;

  virtual std::string name() const = 0;
  virtual const Region& region() const = 0;

  /// Top form L(phi).
  virtual Form<T> lagrangian(const FieldPoint<T>& phi) const = 0;
  /// Top form E(X; phi).
  virtual Form<T> field_equation(const FieldPoint<T>& phi,
                                 const FieldTangent<T>& x) const = 0;
  /// Degree n-1 form theta(X; phi).
  virtual Form<T> potential(const FieldPoint<T>& phi,
                            const FieldTangent<T>& x) const = 0;
  /// Degree n-2 form theta(chi; phi), the boundary part of the current.
  virtual Form<T> potential_param(const FieldPoint<T>& phi,
                                  const Form<T>& chi) const = 0;
  /// Degree n-1 form E(chi; phi), the bulk part of the current.
  virtual Form<T> equation_param(const FieldPoint<T>& phi,
                                 const Form<T>& chi) const = 0;
};

/// Optional scalar potential V = mu2 |phi|^2 + lambda |phi|^4 (times vol).
struct ScalarPotential {
  double mu2 = 0.0;
  double lambda = 0.0;
  bool active() const { return mu2 != 0.0 || lambda != 0.0; }
};

/// L = 1/2 Tr(F ^ *F) + 1/2 <D phi ^ *D phi> + V.
class YangMillsScalar final : public Theory<cplx> {
 public:
  YangMillsScalar(Region region, GroupTag group, RepTag rep,
                  ScalarPotential potential = {});

  std::string name() const override { return "yang_mills_scalar"; }
  const Region& region() const override { return region_; }
  GroupTag group() const { return group_; }
  RepTag rep() const { return rep_; }

  Form<cplx> lagrangian(const FieldPoint<cplx>& phi) const override;
  Form<cplx> field_equation(const FieldPoint<cplx>& phi,
                            const FieldTangent<cplx>& x) const override;
  Form<cplx> potential(const FieldPoint<cplx>& phi,
                       const FieldTangent<cplx>& x) const override;
  Form<cplx> potential_param(const FieldPoint<cplx>& phi,
                             const Form<cplx>& chi) const override;
  Form<cplx> equation_param(const FieldPoint<cplx>& phi,
                            const Form<cplx>& chi) const override;

  /// Theta(X, Y) kernel written out: Tr(dY A ^ *D dX A) - (X <-> Y) plus
  /// the matter analogue, integrated over the slice by the caller.
  Form<cplx> presymplectic_density(const FieldPoint<cplx>& phi,
                                   const FieldTangent<cplx>& x,
                                   const FieldTangent<cplx>& y) const;

 private:
  void check(const FieldPoint<cplx>& phi) const;

  Region region_;
  GroupTag group_;
  RepTag rep_;
  ScalarPotential potential_;
  Form<cplx> volume_;
};

YangMillsScalar ym_kernels(const Region& region, GroupTag group, RepTag rep,
                           ScalarPotential potential = {});

/// Which bilinear form lowers and raises the index pair inside the bullet
/// polynomial: eta with unit weight, or the region metric with sqrt|g|.
enum class PairingMetric { minkowski, region };

/// Per-node data of the bullet pairing.
class BulletPairing {
 public:
  BulletPairing(const Region& region, PairingMetric kind);
  bool constant() const { return constant_; }
  const Eigen::Matrix4d& lower(std::size_t node) const {
    return lower_[constant_ ? 0 : node];
  }
  const Eigen::Matrix4d& raise(std::size_t node) const {
    return raise_[constant_ ? 0 : node];
  }
  double weight(std::size_t node) const { return weight_[constant_ ? 0 : node]; }

 private:
  bool constant_ = true;
  std::vector<Eigen::Matrix4d> lower_;
  std::vector<Eigen::Matrix4d> raise_;
  std::vector<double> weight_;
};

/// a . b of 4x4-valued forms through the bullet polynomial.
Form<double> bullet_wedge(const Form<double>& a, const Form<double>& b,
                          const BulletPairing& pairing);
/// Pointwise w * L with L the lowering matrix of the pairing.
Form<double> lower_right(const Form<double>& w, const BulletPairing& pairing);

/// McDowell-Mansouri sector: L = 1/2 F . F with F = R - (eps/ell^2) e^e^T L.
/// With PairingMetric::region and tetrad = identity this is the dressed
/// theory of the linear connection Gamma.
class McDowellMansouri final : public Theory<double> {
 public:
  McDowellMansouri(Region region, double ell, int lambda_sign,
                   PairingMetric metric = PairingMetric::minkowski);

  std::string name() const override { return "mcdowell_mansouri"; }
  const Region& region() const override { return region_; }
  double ell() const { return ell_; }
  int lambda_sign() const { return sign_; }
  const BulletPairing& pairing() const { return pairing_; }

  /// Cartan curvature F of (A, e).
  Form<double> cartan_curvature(const FieldPoint<double>& phi) const;

  Form<double> lagrangian(const FieldPoint<double>& phi) const override;
  Form<double> field_equation(const FieldPoint<double>& phi,
                              const FieldTangent<double>& x) const override;
  Form<double> potential(const FieldPoint<double>& phi,
                         const FieldTangent<double>& x) const override;
  Form<double> potential_param(const FieldPoint<double>& phi,
                               const Form<double>& chi) const override;
  Form<double> equation_param(const FieldPoint<double>& phi,
                              const Form<double>& chi) const override;

 private:
  void check(const FieldPoint<double>& phi) const;
  double coupling() const { return sign_ / (ell_ * ell_); }

  Region region_;
  double ell_;
  int sign_;
  BulletPairing pairing_;
};

McDowellMansouri mm_kernels(const Region& region, double ell, int lambda_sign);

// Gravity geometry -----------------------------------------------------------

/// Tetrad-dressed Cartan data. Gamma = e^{-1} A e + e^{-1} de, g = e^T eta e.
struct GravityData {
  Form<double> tetrad;
  Form<double> A;
  Region region;              // grid with nodal metric g
  Form<double> Gamma;         // gl(4)-valued 1-form
  Form<double> riemann;       // dGamma + Gamma ^ Gamma
  Form<double> torsion;       // Gamma ^ dx
  Form<double> F_dressed;     // riemann - (eps/ell^2) dx ^ dx^T g
  Form<double> F_conjugated;  // e^{-1} F(A, e) e
  double ell = 1.0;
  int lambda_sign = 1;
};

GravityData tetrad_dressing(const FieldPoint<double>& phi,
                            const Signature& signature);

/// Torsion-free so(1,3) connection of a tetrad from the nodal tetrad
/// postulate de + A ^ e = 0 (24 x 24 solve per node).
Form<double> levi_civita_connection(const Form<double>& tetrad);

/// Analytic tetrads on a coordinate patch. Coordinates are (t, r, theta,
/// phi) for the spherical families and Cartesian for flat.
struct AnalyticGeometry {
  std::string name;
  double mass = 0.0;
  double ell = 1.0;
  int lambda_sign = 1;
  Form<double> tetrad;
  std::vector<std::string> patch_notes;
};

/// f(r) of the static family; BadPatch if non-positive on the grid.
double static_lapse(const std::string& name, double r, double mass,
                    double ell);
AnalyticGeometry analytic_metric(const std::string& name, const Grid& grid,
                                 double mass, double ell);

/// kappa^mu_nu = d_nu zeta^mu + Gamma^mu_{rho nu} zeta^rho; zeta is a
/// 4 x 1 vector 0-form.
Form<double> killing_gradient(const Form<double>& Gamma,
                              const Form<double>& zeta);
/// max |L_zeta g| over interior nodes.
double killing_residual(const Region& region, const Form<double>& zeta);

}  // namespace cps
