// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "cps/theories.hpp"

namespace cps {

namespace {

Form<cplx> unit_scalar(const Grid& grid) {
  Form<cplx> one(grid, 0, ValueSpace::scalar());
  for (auto& v : one.values()) v = 1.0;
  return one;
}

// Dphi for matter, or nothing.
Form<cplx> matter_gradient(const FieldPoint<cplx>& phi) {
  return covariant_derivative(phi.A, *phi.matter);
}

}  // namespace

YangMillsScalar::YangMillsScalar(Region region, GroupTag group, RepTag rep,
                                 ScalarPotential potential)
    : region_(std::move(region)),
      group_(group),
      rep_(rep),
      potential_(potential),
      volume_(hodge(unit_scalar(region_.grid()), region_)) {}

void YangMillsScalar::check(const FieldPoint<cplx>& phi) const {
  if (!(phi.grid() == region_.grid()))
    throw GridMismatch("field lives on a different grid than the theory");
  if (phi.A.degree() != 1) throw DegreeMismatch("potential must be a 1-form");
  if (!(phi.group() == group_))
    throw PairingMismatch("field group " + phi.group().name() +
                          " differs from theory group " + group_.name());
  if (phi.matter && rep_ == RepTag::none)
    throw PairingMismatch("matter supplied to a pure gauge theory");
}

Form<cplx> YangMillsScalar::lagrangian(const FieldPoint<cplx>& phi) const {
  check(phi);
  const Form<cplx> F = curvature(phi.A);
  Form<cplx> L = wedge(F, hodge(F, region_), Pairing::trace);
  if (phi.matter) {
    const Form<cplx> Dphi = matter_gradient(phi);
    L += wedge(Dphi, hodge(Dphi, region_), Pairing::inner);
  }
  L *= cplx(0.5);
  if (phi.matter && potential_.active()) {
    const Form<cplx>& m = *phi.matter;
    for (std::size_t node = 0; node < m.nodes(); ++node) {
      double r2 = 0.0;
      for (int e = 0; e < m.block(); ++e) r2 += std::norm(m.at(node, 0)[e]);
      const double v = potential_.mu2 * r2 + potential_.lambda * r2 * r2;
      *L.at(node, 0) += v * *volume_.at(node, 0);
    }
  }
  return L;
}

Form<cplx> YangMillsScalar::field_equation(const FieldPoint<cplx>& phi,
                                           const FieldTangent<cplx>& x) const {
  check(phi);
  const Form<cplx> F = curvature(phi.A);
  Form<cplx> E =
      wedge(x.A, covariant_derivative(phi.A, hodge(F, region_)), Pairing::trace);
  if (phi.matter) {
    const Form<cplx> star_Dphi = hodge(matter_gradient(phi), region_);
    const Form<cplx> dA_phi =
        wedge(x.A, *phi.matter, Pairing::product).retag(phi.matter->space());
    E += wedge(dA_phi, star_Dphi, Pairing::inner);
    if (x.matter) {
      E -= wedge(*x.matter, covariant_derivative(phi.A, star_Dphi),
                 Pairing::inner);
      if (potential_.active()) {
        const Form<cplx>& m = *phi.matter;
        for (std::size_t node = 0; node < m.nodes(); ++node) {
          double r2 = 0.0, re = 0.0;
          for (int e = 0; e < m.block(); ++e) {
            r2 += std::norm(m.at(node, 0)[e]);
            re += (std::conj(m.at(node, 0)[e]) * x.matter->at(node, 0)[e]).real();
          }
          const double dv = (2.0 * potential_.mu2 + 4.0 * potential_.lambda * r2) * re;
          *E.at(node, 0) += dv * *volume_.at(node, 0);
        }
      }
    }
  }
  return E;
}

Form<cplx> YangMillsScalar::potential(const FieldPoint<cplx>& phi,
                                      const FieldTangent<cplx>& x) const {
  check(phi);
  Form<cplx> theta =
      wedge(x.A, hodge(curvature(phi.A), region_), Pairing::trace);
  if (phi.matter && x.matter)
    theta += wedge(*x.matter, hodge(matter_gradient(phi), region_),
                   Pairing::inner);
  return theta;
}

Form<cplx> YangMillsScalar::potential_param(const FieldPoint<cplx>& phi,
                                            const Form<cplx>& chi) const {
  check(phi);
  return wedge(chi, hodge(curvature(phi.A), region_), Pairing::trace);
}

Form<cplx> YangMillsScalar::equation_param(const FieldPoint<cplx>& phi,
                                           const Form<cplx>& chi) const {
  check(phi);
  const Form<cplx> F = curvature(phi.A);
  Form<cplx> E =
      wedge(chi, covariant_derivative(phi.A, hodge(F, region_)), Pairing::trace);
  if (phi.matter) {
    const Form<cplx> chi_phi =
        wedge(chi, *phi.matter, Pairing::product).retag(phi.matter->space());
    E += wedge(chi_phi, hodge(matter_gradient(phi), region_), Pairing::inner);
  }
  return E;
}

Form<cplx> YangMillsScalar::presymplectic_density(
    const FieldPoint<cplx>& phi, const FieldTangent<cplx>& x,
    const FieldTangent<cplx>& y) const {
  check(phi);
  auto half = [&](const FieldTangent<cplx>& a, const FieldTangent<cplx>& b) {
    // Tr(b_A ^ *D a_A) + <b_m, *(D a_m + a_A m)>
    Form<cplx> out = wedge(
        b.A, hodge(covariant_derivative(phi.A, a.A), region_), Pairing::trace);
    if (phi.matter && a.matter && b.matter) {
      Form<cplx> var = covariant_derivative(phi.A, *a.matter);
      var += wedge(a.A, *phi.matter, Pairing::product).retag(var.space());
      out += wedge(*b.matter, hodge(var, region_), Pairing::inner);
    }
    return out;
  };
  Form<cplx> out = half(x, y);
  out -= half(y, x);
  return out;
}

YangMillsScalar ym_kernels(const Region& region, GroupTag group, RepTag rep,
                           ScalarPotential potential) {
  return YangMillsScalar(region, group, rep, potential);
}

}  // namespace cps
