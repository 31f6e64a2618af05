// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "cps/basicity.hpp"

#include <cmath>

namespace cps {

DressingMethod parse_dressing_method(const std::string& text) {
  if (text == "u1_polar") return DressingMethod::u1_polar;
  if (text == "tetrad") return DressingMethod::tetrad;
  if (text == "supplied") return DressingMethod::supplied;
  throw ConfigError("unknown dressing method '" + text + "'");
}

std::string to_string(DressingMethod m) {
  switch (m) {
    case DressingMethod::u1_polar:
      return "u1_polar";
    case DressingMethod::tetrad:
      return "tetrad";
    case DressingMethod::supplied:
      break;
  }
  return "supplied";
}

template <class T>
Dressing<T> extract_dressing(const FieldPoint<T>& phi, DressingMethod method,
                             double floor) {
  Dressing<T> out;
  out.method = method;
  if (method == DressingMethod::u1_polar) {
    if (!phi.matter || phi.matter->block() != 1)
      throw PairingMismatch("u1_polar dressing needs a one-component matter field");
    const Form<T>& m = *phi.matter;
    out.u = Form<T>(m.grid(), 0, ValueSpace::group_valued(phi.group()));
    std::string bad;
    int count = 0;
    for (std::size_t node = 0; node < m.nodes(); ++node) {
      const T v = *m.at(node, 0);
      const double r = std::sqrt(abs2_of(v));
      if (r <= floor) {
        if (count++ < 8) bad += " " + std::to_string(node);
        continue;
      }
      *out.u.at(node, 0) = v / r;
    }
    if (count > 0)
      throw VanishingModulus("|matter| below floor at " + std::to_string(count) +
                             " nodes:" + bad);
    return out;
  }
  if (method == DressingMethod::tetrad) {
    if (!phi.tetrad) throw SingularTetrad("no tetrad supplied");
    for (std::size_t node = 0; node < phi.tetrad->nodes(); ++node)
      if (std::abs(phi.tetrad->matrix(node, 0).determinant()) < metric_det_floor)
        throw SingularTetrad("tetrad singular at node " + std::to_string(node));
    out.u = *phi.tetrad;
    return out;
  }
  throw ConfigError("a supplied dressing cannot be extracted from the fields");
}

template <class T>
FieldDependentMap<T> dressing_extractor(DressingMethod method, double floor) {
  return [method, floor](const FieldPoint<T>& p) {
    return extract_dressing(p, method, floor).u;
  };
}

template <class T>
FieldPoint<T> dress_fields(const FieldPoint<T>& phi, const Form<T>& u) {
  return gauge_transform(phi, u);
}

template <class T>
BasicThetaReport basic_theta_via_connection(
    const Theory<T>& theory, const FieldSpaceConnection<T>& omega,
    const FieldPoint<T>& phi, const FieldTangent<T>& x) {
  BasicThetaReport out;
  out.theta = theta_sigma(theory, phi, x);
  out.omega_charge = noether_charge(theory, omega(phi, x), phi).value;
  out.basic = out.theta - out.omega_charge;
  out.basic_projected =
      theta_sigma(theory, phi, horizontal_project(x, phi, omega));
  return out;
}

template <class T>
FDResult<double> basic_Theta_via_connection(
    const Theory<T>& theory, const FieldSpaceConnection<T>& omega,
    const FieldPoint<T>& phi, const FieldTangent<T>& x,
    const FieldTangent<T>& y, FDOptions opt) {
  const VariationalOneForm<T> basic = [&](const FieldPoint<T>& p,
                                          const FieldTangent<T>& z) {
    return basic_theta_via_connection(theory, omega, p, z).basic;
  };
  return fs_two_form_kozsul(basic, phi, x, y, opt);
}

namespace {

template <class T>
FieldDependentMap<T> guarded(const FieldDependentMap<T>& extractor) {
  return [extractor](const FieldPoint<T>& p) {
    try {
      return extractor(p);
    } catch (const VanishingModulus& e) {
      throw FDDomainError(std::string("extractor failed at a displaced point: ") +
                          e.what());
    } catch (const SingularTetrad& e) {
      throw FDDomainError(std::string("extractor failed at a displaced point: ") +
                          e.what());
    }
  };
}

}  // namespace

template <class T>
DressedReport dressed_presymplectic(const Theory<T>& theory,
                                    const FieldPoint<T>& phi,
                                    const FieldDependentMap<T>& extractor,
                                    const FieldTangent<T>& x,
                                    const FieldTangent<T>& y,
                                    FDOptions opt) {
  const FieldDependentMap<T> u = guarded(extractor);
  // Dressing acts on the fields like a field-dependent transformation by u.
  const TransformReport t =
      gauge_transformed_presymplectic(theory, u, phi, x, y, opt);
  DressedReport out;
  out.theta = theta_sigma(theory, phi, x);
  out.theta_formula = t.theta_formula;
  out.theta_direct = t.theta_pullback;
  out.Theta_formula = t.Theta_formula;
  out.Theta_direct = t.Theta_pullback;
  out.fd_error = t.fd_error;
  return out;
}

template <class T>
ResidualTransformReport residual_transform(
    const Theory<T>& theory, const FieldPoint<T>& phi,
    const FieldDependentMap<T>& extractor, const FieldDependentMap<T>& xi,
    const FieldTangent<T>& x, FDOptions opt, const Form<T>* probe_gamma) {
  const FieldDependentMap<T> u = guarded(extractor);
  const FieldDependentMap<T> u_xi = [&](const FieldPoint<T>& p) {
    Form<T> a = u(p);
    const Form<T> b = xi(p);
    for (std::size_t node = 0; node < a.nodes(); ++node)
      a.matrix(node, 0) = a.matrix(node, 0) * b.matrix(node, 0);
    return a;
  };
  auto direct = [&](const FieldDependentMap<T>& dress) {
    const FieldPoint<T> ref = dress_fields(phi, dress(phi));
    const auto image = fs_directional(
        [&](const FieldPoint<T>& q) {
          return difference(dress_fields(q, dress(q)), ref);
        },
        phi, x, opt);
    return theta_sigma(theory, ref, image.value);
  };
  ResidualTransformReport out;
  out.theta_dressed = direct(u);
  out.theta_redressed = direct(u_xi);
  out.shift_direct = out.theta_redressed - out.theta_dressed;
  const FieldPoint<T> dressed = dress_fields(phi, u(phi));
  out.shift_formula =
      noether_charge(theory, maurer_cartan_right(xi, phi, x, opt), dressed)
          .value;
  if (probe_gamma)
    out.invariance_residual =
        fd_norm(xi(gauge_transform(phi, *probe_gamma)) - xi(phi));
  return out;
}

template <class T>
ChargeReport dressed_charge(const Theory<T>& dressed_theory,
                            const Form<T>& kappa,
                            const FieldPoint<T>& dressed_phi, FaceSet faces) {
  return noether_charge(dressed_theory, kappa, dressed_phi, faces);
}

DressedGravity dressed_gravity(const GravityData& data) {
  Region region = data.region;
  if (!region.slice()) region.set_slice({0, region.grid().cells[0] / 2});
  const Form<double> identity = constant_field<double>(
      region.grid(), data.tetrad.space(), Eigen::MatrixXd::Identity(4, 4));
  return {McDowellMansouri(region, data.ell, data.lambda_sign,
                           PairingMetric::region),
          FieldPoint<double>{data.Gamma, std::nullopt, identity, data.ell,
                             data.lambda_sign}};
}

#define CPS_INSTANTIATE(T)                                                     \
  template Dressing<T> extract_dressing(const FieldPoint<T>&, DressingMethod,  \
                                        double);                               \
  template FieldDependentMap<T> dressing_extractor(DressingMethod, double);    \
  template FieldPoint<T> dress_fields(const FieldPoint<T>&, const Form<T>&);   \
  template BasicThetaReport basic_theta_via_connection(                        \
      const Theory<T>&, const FieldSpaceConnection<T>&, const FieldPoint<T>&,  \
      const FieldTangent<T>&);                                                 \
  template FDResult<double> basic_Theta_via_connection(                        \
      const Theory<T>&, const FieldSpaceConnection<T>&, const FieldPoint<T>&,  \
      const FieldTangent<T>&, const FieldTangent<T>&, FDOptions);              \
  template DressedReport dressed_presymplectic(                                \
      const Theory<T>&, const FieldPoint<T>&, const FieldDependentMap<T>&,     \
      const FieldTangent<T>&, const FieldTangent<T>&, FDOptions);              \
  template ResidualTransformReport residual_transform(                         \
      const Theory<T>&, const FieldPoint<T>&, const FieldDependentMap<T>&,     \
      const FieldDependentMap<T>&, const FieldTangent<T>&, FDOptions,          \
      const Form<T>*);                                                         \
  template ChargeReport dressed_charge(const Theory<T>&, const Form<T>&,       \
                                       const FieldPoint<T>&, FaceSet);

CPS_INSTANTIATE(double)
CPS_INSTANTIATE(cplx)

#undef CPS_INSTANTIATE

}  // namespace cps
